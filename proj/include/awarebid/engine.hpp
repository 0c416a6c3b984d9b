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
#include <stdexcept>
#include <string_view>
#include <vector>

#include "awarebid/kernels.hpp"
#include "awarebid/random_stream.hpp"
#include "awarebid/rational.hpp"
#include "awarebid/scenario.hpp"

namespace awarebid {

class EngineError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Backend { kMonteCarlo, kExact };

std::string_view backend_name(Backend b);

struct EstimatorConfig {
  std::uint64_t n_samples = 100000;
  std::uint64_t seed = 1;
  Backend backend = Backend::kMonteCarlo;
  bool report_standard_errors = true;
  /// Largest product of support sizes the exact backend will sweep.
  std::uint64_t enumeration_cap = 10000000;
  /// Parallel workers for Monte Carlo; results do not depend on this.
  int workers = 1;
  /// Exact backend only: also sweep the characteristics each bidder is
  /// unaware of, so hidden_gain is computed from the joint law rather than
  /// left empty. Monte Carlo always draws them.
  bool include_hidden = false;
  Isa isa = detected_isa();
};

/// One expectation. Exact values carry the rational; Monte Carlo values
/// carry the standard error of the mean (0 when not requested).
struct Estimate {
  double value = 0.0;
  double std_error = 0.0;
  std::optional<Rational> exact;
};

struct BidderEstimates {
  /// Expected surplus as bidder i sees it (from his own awareness).
  Estimate perceived_surplus;
  /// Expected surplus of the same valuation from the fully aware view.
  Estimate actual_surplus;
  /// perceived_surplus - actual_surplus, estimated draw by draw.
  Estimate rent;
  Estimate perceived_win;
  Estimate actual_win;
  /// E[sum of i's unaware characteristics on draws i wins], win-share weighted.
  Estimate hidden_gain;
};

struct EstimateBundle {
  Backend backend = Backend::kMonteCarlo;
  std::uint64_t samples = 0;  // draws (Monte Carlo) or swept outcomes (exact)
  Estimate first;             // highest true estimated valuation
  Estimate second;            // second highest, the price
  std::vector<BidderEstimates> bidders;
  Estimate revenue_from_fees;   // sum of perceived surpluses + second
  Estimate revenue_from_rents;  // first + sum of rents
  Estimate residual;            // difference of the two routes
  bool has_hidden = false;
};

/// Realized values x[i][j] of one draw.
using Draw = std::vector<std::vector<double>>;

/// Every entry uses its own uniform keyed by (seed, draw index, i, j), so two
/// policies evaluated with the same seed see the same draws.
Draw draw_state(const Scenario& s, std::uint64_t seed, std::uint64_t draw_index);

struct BidProfile {
  std::vector<double> bids;
  AwarenessSet view;
};

/// Bids as perceived by an agent aware of `view`.
BidProfile bids(const Scenario& s, const DisclosurePolicy& p, const Draw& d, const AwarenessSet& view);

struct AuctionOutcome {
  int winner = -1;
  double price = 0.0;
  std::vector<int> tie_set;
};

/// Second-price settlement; ties at the top go to a uniformly chosen bidder
/// using the stream's reserved tie lane.
AuctionOutcome settle(const BidProfile& b, const RandomStream& tie_stream);

/// Product of support sizes over the (bidder, characteristic) pairs the
/// exact backend has to sweep; nullopt when a continuous law is in scope.
std::optional<std::uint64_t> exact_cap_check(const Scenario& s, const DisclosurePolicy& p,
                                             bool include_hidden = false);

EstimateBundle estimate(const Scenario& s, const DisclosurePolicy& p, const EstimatorConfig& config);

}  // namespace awarebid
