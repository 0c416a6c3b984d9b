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

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "awarebid/fees.hpp"

namespace awarebid {

class DisclosureError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// What the seller may choose.
///   kIndividual:      awareness per bidder; info comes from a fixed plan.
///   kPublicNoInfo:    one awareness set for everyone; only the default
///                     characteristic carries its planned info, the rest none.
///   kPublicFullInfo:  one awareness set for everyone; full info beyond the
///                     default characteristic.
///   kCommonFreeInfo:  one awareness set for everyone; none or full info per
///                     (bidder, characteristic), default characteristic included.
enum class Regime { kIndividual, kPublicNoInfo, kPublicFullInfo, kCommonFreeInfo };

std::string_view regime_name(Regime r);
std::optional<Regime> parse_regime(std::string_view name);

struct OptimizeConfig {
  EstimatorConfig estimator;
  /// Info each pair receives when aware. Empty means full info everywhere.
  InfoPlan plan;
  /// Exhaustive search when the candidate encoding has at most this many bits.
  int exhaustive_bits = 16;
  bool allow_greedy = true;
};

struct TraceEntry {
  DisclosurePolicy policy;
  Estimate revenue;
};

struct OptimizeResult {
  Regime regime = Regime::kIndividual;
  bool exhaustive = true;
  DisclosurePolicy best;
  RevenueReport report;
  std::vector<TraceEntry> trace;  // every candidate evaluated, in search order
};

/// Number of bits in the regime's candidate encoding.
int search_bits(const Scenario& s, Regime r);

/// Decodes candidate `code` of the regime, or nullopt for codes that do not
/// name a distinct policy (info chosen for an unaware characteristic).
std::optional<DisclosurePolicy> decode_candidate(const Scenario& s, Regime r, const InfoPlan& plan,
                                                 std::uint64_t code);

/// Revenue-maximizing policy. Ties go to fewer aware pairs, then fewer
/// informed pairs, then the lower candidate code. Under the exact backend
/// comparisons are in rational arithmetic.
OptimizeResult optimize(const Scenario& s, Regime r, const OptimizeConfig& config);

struct TradeoffBreakdown {
  Estimate delta_first_order_stat;
  /// Change in the rents of every bidder other than the target; with the
  /// others either fully aware or left at the smaller set this is the gain
  /// from the bidders who stay unaware.
  Estimate delta_rents_remaining_unaware;
  /// Target's rent before minus after.
  Estimate lost_rent_newly_aware;
  bool raise = false;
  Estimate revenue_before;
  Estimate revenue_after;
};

/// Effect of making `target` (0-based) aware of characteristic `ell`
/// (0-based) when every bidder is aware of either some set S or S plus ell.
/// The two policies share draws (Monte Carlo) or outcomes (exact).
/// `level` is the info the target receives on ell.
TradeoffBreakdown check_tradeoff(const Scenario& s, const DisclosurePolicy& base, int target, int ell,
                                 const EstimatorConfig& config, const InfoLevel& level = InfoLevel::full());

/// a - b with the exact part kept when both sides have one.
Estimate difference(const Estimate& a, const Estimate& b);
Estimate sum(const Estimate& a, const Estimate& b);

/// Sign of an estimate: exact when available, otherwise +1 / -1 only when the
/// value clears `z` standard errors, else 0.
int strict_sign(const Estimate& e, double z = 4.0);

}  // namespace awarebid
