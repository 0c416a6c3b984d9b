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

#include <gtest/gtest.h>

#include "awarebid/disclosure.hpp"
#include "awarebid/scenario_io.hpp"
#include "awarebid/verify.hpp"
#include "oracle/brute_force.hpp"

namespace awarebid {
namespace {

Rational q(long p, unsigned long d = 1) { return make_rational(p, d); }

ScenarioFile load(const char* name) { return parse_scenario(std::string(AWAREBID_SCENARIO_DIR "/") + name); }

EstimatorConfig exact() {
  EstimatorConfig c;
  c.backend = Backend::kExact;
  return c;
}

int aware_pairs(const DisclosurePolicy& p) {
  int n = 0;
  for (const auto& a : p.awareness) n += a.size();
  return n;
}

TEST(Regime, NamesRoundTrip) {
  for (Regime r : {Regime::kIndividual, Regime::kPublicNoInfo, Regime::kPublicFullInfo, Regime::kCommonFreeInfo}) {
    EXPECT_EQ(parse_regime(regime_name(r)), r);
  }
  EXPECT_FALSE(parse_regime("private"));
}

TEST(Optimize, ExhaustiveSearchBeatsEveryCandidate) {
  CorpusConfig cc;
  cc.seed = 31;
  cc.count = 8;
  for (const auto& sc : generate_corpus(cc)) {
    for (Regime r : {Regime::kIndividual, Regime::kPublicNoInfo, Regime::kPublicFullInfo}) {
      OptimizeConfig oc;
      oc.estimator = exact();
      oc.plan = sc.plan;
      const OptimizeResult res = optimize(sc.scenario, r, oc);
      ASSERT_TRUE(res.exhaustive);
      const Rational best = *res.report.total_revenue.exact;
      std::size_t distinct = 0;
      for (std::uint64_t code = 0; code < (1ull << search_bits(sc.scenario, r)); ++code) {
        if (decode_candidate(sc.scenario, r, sc.plan, code)) ++distinct;
      }
      EXPECT_EQ(res.trace.size(), distinct);
      for (const auto& t : res.trace) EXPECT_LE(*t.revenue.exact, best) << sc.id;
      // The winning revenue replays through the oracle.
      EXPECT_EQ(oracle::solve(oracle::from_scenario(sc.scenario, res.best)).revenue_fees, best) << sc.id;
    }
  }
}

TEST(Optimize, TiesGoToFewerAwarePairs) {
  // Characteristic 2 has mean zero, so public awareness without info
  // leaves revenue unchanged.
  Scenario s;
  s.n_bidders = 2;
  s.m_characteristics = 2;
  const auto base = Distribution::discrete({{0, q(1, 2)}, {1, q(1, 2)}});
  const auto zero = Distribution::discrete({{-1, q(1, 2)}, {1, q(1, 2)}});
  s.laws = {{base, zero}, {base, zero}};
  OptimizeConfig oc;
  oc.estimator = exact();
  const OptimizeResult res = optimize(s, Regime::kPublicNoInfo, oc);
  ASSERT_EQ(res.trace.size(), 2u);
  EXPECT_EQ(*res.trace[0].revenue.exact, *res.trace[1].revenue.exact);
  EXPECT_EQ(aware_pairs(res.best), 2);
}

TEST(Optimize, CommonFreeInfoPrefersAsymmetricInformation) {
  const ScenarioFile f = load("common_free_info.json");
  OptimizeConfig oc;
  oc.estimator = exact();
  const OptimizeResult res = optimize(f.scenario, Regime::kCommonFreeInfo, oc);
  EXPECT_EQ(*res.report.total_revenue.exact, q(3, 4));
  EXPECT_EQ(estimate(f.scenario, f.policy, exact()).revenue_from_fees.exact, q(1, 2));
  int informed = 0;
  for (int i = 0; i < 2; ++i) informed += res.best.level(i, 0).kind == InfoLevel::Kind::kFull;
  EXPECT_EQ(informed, 1);
}

TEST(Optimize, GreedyWhenOverTheBitBudget) {
  const ScenarioFile f = load("coins_both_aware.json");
  OptimizeConfig oc;
  oc.estimator = exact();
  oc.exhaustive_bits = 0;
  const OptimizeResult greedy = optimize(f.scenario, Regime::kIndividual, oc);
  EXPECT_FALSE(greedy.exhaustive);
  oc.allow_greedy = false;
  EXPECT_THROW(optimize(f.scenario, Regime::kIndividual, oc), DisclosureError);
}

TEST(Tradeoff, TwoCoinRaiseBreakdown) {
  const ScenarioFile f = load("coins.json");
  const TradeoffBreakdown t = check_tradeoff(f.scenario, f.policy, 1, 1, exact());
  EXPECT_EQ(*t.delta_first_order_stat.exact, q(1, 2));
  EXPECT_EQ(*t.delta_rents_remaining_unaware.exact, q(0));
  EXPECT_EQ(*t.lost_rent_newly_aware.exact, q(1, 8));
  EXPECT_TRUE(t.raise);
  EXPECT_EQ(*t.revenue_before.exact, q(7, 4));
  EXPECT_EQ(*t.revenue_after.exact, q(17, 8));
  // Decision agrees with the revenue comparison and the pieces add up.
  EXPECT_EQ(*t.revenue_after.exact - *t.revenue_before.exact,
            *t.delta_first_order_stat.exact + *t.delta_rents_remaining_unaware.exact - *t.lost_rent_newly_aware.exact);
}

TEST(Tradeoff, EveryoneAlreadyAwareIsANoOp) {
  const ScenarioFile f = load("coins.json");
  DisclosurePolicy all = f.policy;
  all.awareness[1] = AwarenessSet::of({1, 2});
  all.info[1][1] = InfoLevel::full();
  const TradeoffBreakdown t = check_tradeoff(f.scenario, all, 1, 1, exact());
  EXPECT_FALSE(t.raise);
  EXPECT_EQ(*t.delta_first_order_stat.exact, q(0));
  EXPECT_EQ(*t.lost_rent_newly_aware.exact, q(0));
}

TEST(Tradeoff, RejectsTargetAlreadyAwareAndMixedCores) {
  const ScenarioFile f = load("coins.json");
  EXPECT_THROW(check_tradeoff(f.scenario, f.policy, 0, 1, exact()), DisclosureError);
  Scenario g;
  g.n_bidders = 3;
  g.m_characteristics = 3;
  const auto coin = Distribution::discrete({{0, q(1, 2)}, {1, q(1, 2)}});
  g.laws.assign(3, std::vector<Distribution>(3, coin));
  const DisclosurePolicy mixed = policy_from_plan(
      {AwarenessSet::of({1, 2}), AwarenessSet::of({1}), AwarenessSet::of({1, 3})}, uniform_plan(3, 3, InfoLevel::full()));
  EXPECT_THROW(check_tradeoff(g, mixed, 1, 1, exact()), DisclosureError);
}

TEST(Tradeoff, PublicNoInfoRegimesFollowTheSignOfTheMean) {
  EstimatorConfig mc;
  mc.n_samples = 200000;
  for (auto [name, raise] : {std::pair{"public_no_info_negative.json", false}, {"public_no_info_positive.json", true}}) {
    const ScenarioFile f = load(name);
    OptimizeConfig oc;
    oc.estimator = mc;
    const OptimizeResult res = optimize(f.scenario, Regime::kPublicNoInfo, oc);
    EXPECT_EQ(aware_pairs(res.best) == 4, raise) << name;
  }
}

TEST(Estimates, DifferenceAndSign) {
  const Estimate a{1.5, 0.1, q(3, 2)}, b{0.5, 0.1, q(1, 2)};
  const Estimate d = difference(a, b);
  EXPECT_EQ(*d.exact, q(1));
  EXPECT_EQ(strict_sign(d), 1);
  EXPECT_EQ(strict_sign(Estimate{0.3, 0.1, std::nullopt}), 0);
  EXPECT_EQ(strict_sign(Estimate{-0.5, 0.1, std::nullopt}), -1);
  EXPECT_EQ(*sum(a, b).exact, q(2));
}

}  // namespace
}  // namespace awarebid
