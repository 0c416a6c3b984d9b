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

#include "awarebid/engine.hpp"
#include "awarebid/fees.hpp"
#include "awarebid/verify.hpp"
#include "oracle/brute_force.hpp"

namespace awarebid {
namespace {

Rational q(long p, unsigned long d = 1) { return make_rational(p, d); }

Distribution coin(long hi) { return Distribution::discrete({{0, q(1, 2)}, {hi, q(1, 2)}}); }

// Two bidders; characteristic 1 ~ {0,1}, characteristic 2 ~ {0,2}, fair coins;
// bidder 1 aware of both, bidder 2 of the first only; full information.
Scenario coins() {
  Scenario s;
  s.n_bidders = 2;
  s.m_characteristics = 2;
  s.laws = {{coin(1), coin(2)}, {coin(1), coin(2)}};
  return s;
}

DisclosurePolicy coins_policy() {
  return policy_from_plan({AwarenessSet::of({1, 2}), AwarenessSet::of({1})}, uniform_plan(2, 2, InfoLevel::full()));
}

EstimatorConfig exact_config(bool hidden = false) {
  EstimatorConfig c;
  c.backend = Backend::kExact;
  c.include_hidden = hidden;
  return c;
}

TEST(Scenario, LatticeOrderAndValidation) {
  const auto l = lattice(3);
  ASSERT_EQ(l.size(), 4u);
  EXPECT_EQ(l[0], AwarenessSet::of({1}));
  EXPECT_EQ(l[1], AwarenessSet::of({1, 2}));
  EXPECT_EQ(l[2], AwarenessSet::of({1, 3}));
  EXPECT_EQ(l[3], AwarenessSet::of({1, 2, 3}));
  const Scenario s = coins();
  DisclosurePolicy bad = coins_policy();
  bad.awareness[1] = AwarenessSet::of({2});
  try {
    validate(s, bad);
    FAIL();
  } catch (const ScenarioError& e) {
    EXPECT_NE(std::string(e.what()).find("bidder 2"), std::string::npos);
    EXPECT_NE(std::string(e.what()).find("characteristic 1"), std::string::npos);
  }
  DisclosurePolicy leak = coins_policy();
  leak.info[1][1] = InfoLevel::full();
  EXPECT_THROW(validate(s, leak), ScenarioError);
}

TEST(Scenario, PerceptionIntersectsAwareness) {
  const DisclosurePolicy p = perceive(coins_policy(), AwarenessSet::of({1}));
  EXPECT_EQ(p.aware(0), AwarenessSet::of({1}));
  EXPECT_FALSE(p.info[0][1].has_value());
}

// Hand enumeration of the 8 outcomes, frozen.
TEST(Engine, TwoCoinExactValues) {
  const EstimateBundle b = estimate(coins(), coins_policy(), exact_config());
  EXPECT_EQ(*b.first.exact, q(13, 8));
  EXPECT_EQ(*b.second.exact, q(3, 8));
  EXPECT_EQ(*b.bidders[0].perceived_surplus.exact, q(9, 8));
  EXPECT_EQ(*b.bidders[0].rent.exact, q(0));
  EXPECT_EQ(*b.bidders[1].perceived_surplus.exact, q(1, 4));
  EXPECT_EQ(*b.bidders[1].actual_surplus.exact, q(1, 8));
  EXPECT_EQ(*b.bidders[1].rent.exact, q(1, 8));
  EXPECT_EQ(*b.revenue_from_fees.exact, q(7, 4));
  EXPECT_EQ(*b.revenue_from_rents.exact, q(7, 4));
  EXPECT_EQ(*b.residual.exact, q(0));
}

TEST(Engine, SettleSplitsTiesThroughTheTieLane) {
  BidProfile b{{1.0, 3.0, 3.0}, AwarenessSet::of({1})};
  int wins1 = 0;
  for (std::uint64_t d = 0; d < 2000; ++d) {
    const AuctionOutcome o = settle(b, RandomStream(9, d));
    ASSERT_EQ(o.price, 3.0);
    ASSERT_EQ(o.tie_set.size(), 2u);
    ASSERT_TRUE(o.winner == 1 || o.winner == 2);
    wins1 += o.winner == 1;
  }
  EXPECT_NEAR(wins1 / 2000.0, 0.5, 0.05);
  const AuctionOutcome single = settle({{1.0, 4.0, 2.0}, AwarenessSet::of({1})}, RandomStream(1, 0));
  EXPECT_EQ(single.winner, 1);
  EXPECT_EQ(single.price, 2.0);
}

TEST(Engine, ExactBackendRejectsContinuousLawsAndLargeSweeps) {
  Scenario s = coins();
  s.laws[0][0] = Distribution::uniform(0, 1);
  EXPECT_THROW(estimate(s, coins_policy(), exact_config()), EngineError);
  EstimatorConfig c = exact_config();
  c.enumeration_cap = 4;
  EXPECT_THROW(estimate(coins(), coins_policy(), c), EngineError);
  EXPECT_EQ(*exact_cap_check(coins(), coins_policy()), 8u);
  EXPECT_EQ(*exact_cap_check(coins(), coins_policy(), true), 16u);
}

// Every corpus scenario and random policy: the exact backend against the
// independent brute-force oracle, quantity by quantity.
TEST(Engine, ExactBackendMatchesOracleOnCorpus) {
  CorpusConfig cc;
  cc.seed = 2024;
  cc.count = 40;
  for (const auto& sc : generate_corpus(cc)) {
    const EstimateBundle b = estimate(sc.scenario, sc.policy, exact_config(true));
    const oracle::Result r = oracle::solve(oracle::from_scenario(sc.scenario, sc.policy));
    ASSERT_EQ(*b.first.exact, r.first) << sc.id;
    ASSERT_EQ(*b.second.exact, r.second) << sc.id;
    ASSERT_EQ(*b.revenue_from_fees.exact, r.revenue_fees) << sc.id;
    ASSERT_EQ(*b.revenue_from_rents.exact, r.revenue_rents) << sc.id;
    ASSERT_EQ(*b.residual.exact, q(0)) << sc.id;
    for (int i = 0; i < sc.scenario.n_bidders; ++i) {
      const auto k = static_cast<std::size_t>(i);
      ASSERT_EQ(*b.bidders[k].perceived_surplus.exact, r.perceived[k]) << sc.id << " bidder " << i;
      ASSERT_EQ(*b.bidders[k].actual_surplus.exact, r.actual[k]) << sc.id << " bidder " << i;
      ASSERT_EQ(*b.bidders[k].rent.exact, r.rent[k]) << sc.id << " bidder " << i;
      ASSERT_EQ(*b.bidders[k].actual_win.exact, r.actual_win[k]) << sc.id << " bidder " << i;
      ASSERT_EQ(*b.bidders[k].perceived_win.exact, r.perceived_win[k]) << sc.id << " bidder " << i;
      ASSERT_EQ(*b.bidders[k].hidden_gain.exact, r.hidden_gain[k]) << sc.id << " bidder " << i;
    }
  }
}

TEST(Engine, MonteCarloAgreesWithExactWithinFourStandardErrors) {
  CorpusConfig cc;
  cc.seed = 77;
  cc.count = 6;
  for (const auto& sc : generate_corpus(cc)) {
    const EstimateBundle e = estimate(sc.scenario, sc.policy, exact_config(true));
    EstimatorConfig mc;
    mc.n_samples = 200000;
    mc.seed = 3;
    const EstimateBundle m = estimate(sc.scenario, sc.policy, mc);
    auto near = [&](const Estimate& a, const Estimate& x) {
      EXPECT_LE(std::abs(a.value - x.exact->get_d()), 4 * a.std_error + 1e-12) << sc.id;
    };
    near(m.first, e.first);
    near(m.second, e.second);
    near(m.revenue_from_fees, e.revenue_from_fees);
    for (std::size_t i = 0; i < e.bidders.size(); ++i) {
      near(m.bidders[i].rent, e.bidders[i].rent);
      near(m.bidders[i].hidden_gain, e.bidders[i].hidden_gain);
    }
    EXPECT_LT(std::abs(m.residual.value), 1e-9);
  }
}

TEST(Engine, MonteCarloIsInvariantToWorkersAndIsa) {
  const Scenario s = coins();
  EstimatorConfig c;
  c.n_samples = 50000;
  c.seed = 99;
  const EstimateBundle one = estimate(s, coins_policy(), c);
  for (int w : {2, 3, 8}) {
    c.workers = w;
    const EstimateBundle many = estimate(s, coins_policy(), c);
    EXPECT_EQ(one.first.value, many.first.value);
    EXPECT_EQ(one.first.std_error, many.first.std_error);
    EXPECT_EQ(one.bidders[1].rent.value, many.bidders[1].rent.value);
  }
  c.workers = 1;
  c.isa = Isa::kScalar;
  const EstimateBundle scalar = estimate(s, coins_policy(), c);
  EXPECT_EQ(one.first.value, scalar.first.value);
  EXPECT_EQ(one.revenue_from_fees.value, scalar.revenue_from_fees.value);
}

TEST(Engine, SamplesShareDrawsAcrossPolicies) {
  // Common random numbers: the same (seed, draw) yields the same state.
  const Draw a = draw_state(coins(), 5, 17), b = draw_state(coins(), 5, 17);
  EXPECT_EQ(a, b);
  const BidProfile full = bids(coins(), coins_policy(), a, AwarenessSet::all(2));
  const BidProfile seen = bids(coins(), coins_policy(), a, AwarenessSet::of({1}));
  EXPECT_EQ(full.bids[1], seen.bids[1]);
  EXPECT_EQ(seen.bids[0], a[0][0]);
  EXPECT_EQ(full.bids[0], a[0][0] + a[0][1]);
}

TEST(Fees, CurseGapEqualsHiddenMeanTimesWinProbability) {
  const CurseReport c = curse_gap(coins(), coins_policy(), exact_config());
  EXPECT_TRUE(c.bidders[0].fully_aware);
  EXPECT_EQ(*c.bidders[0].gap.exact, q(0));
  EXPECT_EQ(*c.bidders[1].gap.exact, q(1, 4));
  EXPECT_EQ(*c.bidders[1].independent_gap.exact, q(1, 4));
  EXPECT_EQ(*c.bidders[1].perceived_payoff.exact, q(0));
  EXPECT_EQ(*c.bidders[1].actual_payoff.exact, q(1, 8));
}

TEST(Fees, EqualAwarenessHasNoRent) {
  const DisclosurePolicy p =
      policy_from_plan({AwarenessSet::of({1}), AwarenessSet::of({1})}, uniform_plan(2, 2, InfoLevel::full()));
  const FeeSchedule f = entry_fees(coins(), p, exact_config());
  for (const auto& line : f.bidders) EXPECT_EQ(*line.rent.exact, q(0));
  const RevenueReport r = revenue(coins(), p, exact_config());
  EXPECT_EQ(*r.total_revenue.exact, *r.first_order.exact);
}

}  // namespace
}  // namespace awarebid
