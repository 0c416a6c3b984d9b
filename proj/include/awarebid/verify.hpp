// Copyright 2026 The awarebid Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "awarebid/disclosure.hpp"

namespace awarebid {

/// Random discrete scenarios with small integer supports.
struct CorpusConfig {
  std::uint64_t seed = 1;
  int count = 100;
  int min_bidders = 2, max_bidders = 3;
  int min_characteristics = 2, max_characteristics = 3;
  int min_atoms = 2, max_atoms = 3;
  int value_bound = 5;  // support values drawn from [-bound, bound]
  int max_weight = 4;   // atom weights drawn from 1..max_weight, then normalized
  double iid_column = 0.5;  // chance a characteristic has one law for all bidders
  double full_info = 0.60, no_info = 0.15;  // the rest get a random partition
};

struct CorpusScenario {
  int id = 0;
  Scenario scenario;
  InfoPlan plan;
  /// A random individual-awareness policy under `plan`.
  DisclosurePolicy policy;
};

std::vector<CorpusScenario> generate_corpus(const CorpusConfig& config);

enum class Claim {
  kRevenueIdentity,           // fees + price = first order statistic + rents
  kSingleRaiseRevenue,        // raising one bidder from common awareness, positive mean
  kSingleRaiseFirstOrder,
  kSingleRaiseRemainingRents,
  kTradeoffConsistency,       // decision matches the direct revenue comparison
  kTradeoffFirstOrder,
  kTradeoffRemainingRents,
  kTradeoffLostRent,
  kPublicNoInfoShift,         // common awareness without info shifts revenue by the mean
  kPublicFullInfoKeep,        // negative E[max] means keeping everyone unaware is better
  kFullInfoOptimal,           // full info beats every partition assignment
  kEqualAwarenessZeroRent,
};

inline constexpr int kClaimCount = 12;

std::string_view claim_name(Claim c);
std::optional<Claim> parse_claim(std::string_view name);

enum class Verdict { kHolds, kFails, kInconclusive };
std::string_view verdict_name(Verdict v);

/// One instance of a claim on one scenario. For inequality claims `margin`
/// is the side that must be positive (or non-negative); for identities it is
/// the deviation, which must be zero.
struct ClaimCheck {
  int scenario_id = 0;
  Claim claim = Claim::kRevenueIdentity;
  bool hypothesis = true;
  Verdict verdict = Verdict::kHolds;
  Estimate margin;
  std::string detail;
};

struct ClaimSummary {
  Claim claim = Claim::kRevenueIdentity;
  int instances = 0;
  int hypothesis_met = 0;
  int holds = 0;
  int fails = 0;  // with the hypothesis met
  int inconclusive = 0;
  std::optional<ClaimCheck> first_failure;
};

struct VerificationReport {
  std::vector<ClaimCheck> checks;
  /// Scenarios where greedy search found a worse policy than exhaustive
  /// search under the individual regime. Logged, never a failure.
  std::vector<int> greedy_mismatches;
  int scenarios = 0;

  std::vector<ClaimSummary> summary() const;
  /// True when some check with its hypothesis met did not hold.
  bool failed() const;
};

struct VerifyConfig {
  EstimatorConfig estimator = [] {
    EstimatorConfig c;
    c.backend = Backend::kExact;
    return c;
  }();
  int workers = 1;
  /// Largest number of partition assignments compared per awareness set.
  std::uint64_t max_partition_combos = 4000000;
  bool compare_greedy = true;
};

VerificationReport verify_scenario(const CorpusScenario& sc, const VerifyConfig& config);
/// Scenarios are checked independently; the report keeps corpus order.
VerificationReport verify_suite(const std::vector<CorpusScenario>& corpus, const VerifyConfig& config);

enum class CounterexampleKind {
  kRaiseNegativeMean,    // revenue rises from awareness of a characteristic with negative mean
  kKeepUnawareConverse,  // E[max] >= 0 yet keeping everyone unaware is weakly better
};

std::string_view counterexample_name(CounterexampleKind k);
std::optional<CounterexampleKind> parse_counterexample(std::string_view name);

struct Counterexample {
  int scenario_id = 0;
  std::string description;
  Estimate margin;  // revenue gain (first kind) or loss from raising (second kind)
};

std::vector<Counterexample> counterexample_search(CounterexampleKind kind, const std::vector<CorpusScenario>& corpus,
                                                  const VerifyConfig& config);

/// E[max] of independent discrete laws, exactly.
Rational exact_expected_max(const std::vector<std::vector<std::pair<Rational, Rational>>>& laws);

/// All set partitions of `k` support points as canonical label vectors.
std::vector<std::vector<int>> set_partitions(int k);

}  // namespace awarebid
