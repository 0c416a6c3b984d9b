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

#include <vector>

#include "awarebid/engine.hpp"

namespace awarebid {

struct FeeLine {
  Estimate fee;           // what bidder i is willing to pay: his perceived surplus
  Estimate fee_fullview;  // the same surplus judged by a fully aware agent
  Estimate rent;          // fee - fee_fullview
};

struct FeeSchedule {
  Backend backend = Backend::kMonteCarlo;
  std::vector<FeeLine> bidders;
};

struct RevenueReport {
  Backend backend = Backend::kMonteCarlo;
  Estimate first_order;   // E[highest estimated valuation]
  Estimate second_order;  // E[price]
  FeeSchedule fees;
  Estimate total_revenue;         // sum of fees + expected price
  Estimate revenue_via_rents;     // expected highest valuation + sum of rents
  Estimate consistency_residual;  // total_revenue - revenue_via_rents
};

struct CurseLine {
  Estimate perceived_payoff;  // net of the fee; zero by construction
  Estimate actual_payoff;     // including unaware characteristics
  Estimate gap;               // E[unaware characteristics on winning draws]
  Estimate win_probability;
  /// Sum of unaware characteristic means times the win probability; exact
  /// when every law involved has an exact mean and the backend is exact.
  Estimate independent_gap;
  bool fully_aware = false;
};

struct CurseReport {
  Backend backend = Backend::kMonteCarlo;
  std::vector<CurseLine> bidders;
};

FeeSchedule fees_from(const EstimateBundle& b);
RevenueReport revenue_from(const EstimateBundle& b);

FeeSchedule entry_fees(const Scenario& s, const DisclosurePolicy& p, const EstimatorConfig& config);
RevenueReport revenue(const Scenario& s, const DisclosurePolicy& p, const EstimatorConfig& config);
/// Always sweeps (or draws) the characteristics bidders are unaware of.
CurseReport curse_gap(const Scenario& s, const DisclosurePolicy& p, const EstimatorConfig& config);

}  // namespace awarebid
