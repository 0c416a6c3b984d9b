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

#include "awarebid/fees.hpp"

#include <cmath>

namespace awarebid {
namespace {

Estimate negate(const Estimate& e) {
  Estimate out{-e.value, e.std_error, std::nullopt};
  if (e.exact) out.exact = Rational(-*e.exact);
  return out;
}

}  // namespace

FeeSchedule fees_from(const EstimateBundle& b) {
  FeeSchedule out;
  out.backend = b.backend;
  for (const auto& x : b.bidders) out.bidders.push_back({x.perceived_surplus, x.actual_surplus, x.rent});
  return out;
}

RevenueReport revenue_from(const EstimateBundle& b) {
  RevenueReport out;
  out.backend = b.backend;
  out.first_order = b.first;
  out.second_order = b.second;
  out.fees = fees_from(b);
  out.total_revenue = b.revenue_from_fees;
  out.revenue_via_rents = b.revenue_from_rents;
  out.consistency_residual = b.residual;
  return out;
}

FeeSchedule entry_fees(const Scenario& s, const DisclosurePolicy& p, const EstimatorConfig& config) {
  return fees_from(estimate(s, p, config));
}

RevenueReport revenue(const Scenario& s, const DisclosurePolicy& p, const EstimatorConfig& config) {
  return revenue_from(estimate(s, p, config));
}

CurseReport curse_gap(const Scenario& s, const DisclosurePolicy& p, const EstimatorConfig& config) {
  EstimatorConfig cfg = config;
  cfg.include_hidden = true;
  const EstimateBundle b = estimate(s, p, cfg);
  CurseReport out;
  out.backend = b.backend;
  for (int i = 0; i < s.n_bidders; ++i) {
    const BidderEstimates& x = b.bidders[static_cast<std::size_t>(i)];
    CurseLine line;
    line.perceived_payoff = {0.0, 0.0, b.backend == Backend::kExact ? std::optional<Rational>(0) : std::nullopt};
    line.gap = x.hidden_gain;
    line.win_probability = x.actual_win;
    line.fully_aware = p.aware(i) == full_set(s);
    Estimate actual = negate(x.rent);
    actual.value += x.hidden_gain.value;
    actual.std_error = std::hypot(x.rent.std_error, x.hidden_gain.std_error);
    if (actual.exact && x.hidden_gain.exact) {
      actual.exact = *actual.exact + *x.hidden_gain.exact;
      actual.exact->canonicalize();
    } else {
      actual.exact.reset();
    }
    line.actual_payoff = actual;
    double mu = 0;
    std::optional<Rational> mu_exact = Rational(0);
    for (int j = 0; j < s.m_characteristics; ++j) {
      if (p.aware(i).contains(j)) continue;
      mu += mean(s.law(i, j));
      const auto e = exact_mean(s.law(i, j));
      if (e && mu_exact) {
        *mu_exact += *e;
      } else {
        mu_exact.reset();
      }
    }
    line.independent_gap = {mu * x.actual_win.value, std::abs(mu) * x.actual_win.std_error, std::nullopt};
    if (mu_exact && x.actual_win.exact) {
      Rational g = *mu_exact * *x.actual_win.exact;
      g.canonicalize();
      line.independent_gap.exact = g;
      line.independent_gap.value = g.get_d();
    }
    out.bidders.push_back(std::move(line));
  }
  return out;
}

}  // namespace awarebid
