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

// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "awarebid/cli.hpp"
#include "awarebid/disclosure.hpp"
#include "awarebid/orderstats.hpp"
#include "awarebid/scenario_io.hpp"
#include "awarebid/verify.hpp"
#include "oracle/brute_force.hpp"

namespace {

using namespace awarebid;

// Tolerances.
constexpr double kAnalyticTol = 1e-9;
constexpr double kIdentityTol = 1e-12;
constexpr double kSeZ = 4.0;
// Kolmogorov-Smirnov test at significance 0.001: D_crit = c(alpha) / sqrt(n).
constexpr double kKsAlpha = 0.001;
constexpr std::uint64_t kKsDraws = 100000;
constexpr std::uint64_t kMcDraws = 1000000;

// Runtime budgets in seconds.
constexpr double kBudget1 = 10, kBudget2 = 120, kBudget5 = 300;

const std::string kDir = AWAREBID_SCENARIO_DIR;

struct Outcome {
  bool pass = true;
  std::string detail;
  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      if (!detail.empty()) detail += "; ";
      detail += what;
    }
  }
};

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

Rational q(long p, unsigned long d = 1) { return make_rational(p, d); }

EstimatorConfig exact_config() {
  EstimatorConfig c;
  c.backend = Backend::kExact;
  return c;
}

bool within_se(const Estimate& e, double truth) { return std::abs(e.value - truth) <= kSeZ * e.std_error; }

Outcome uniform_order_stats() {
  Outcome o;
  const ScenarioFile f = parse_scenario(kDir + "/uniform_extra.json");
  const AwarenessSet all = full_set(f.scenario);
  const DisclosurePolicy common =
      policy_from_plan({AwarenessSet::of({1}), AwarenessSet::of({1})}, uniform_plan(2, 2, InfoLevel::full()));
  struct Case {
    const char* name;
    DisclosurePolicy policy;
    Rational truth;
  };
  for (const Case& c : {Case{"common", common, q(10, 3)}, Case{"raised", f.policy, q(505, 132)}}) {
    std::vector<ValuationLaw> laws;
    for (int i = 0; i < 2; ++i) laws.push_back(valuation_law(f.scenario, c.policy, i, all));
    const OrderStatLaw law = order_cdf(laws, 1);
    const double t = c.truth.get_d();
    const Moment a = expected_order_stat(law);
    const Moment quad = expected_order_stat_quadrature(law);
    o.require(a.exact && *a.exact == c.truth, std::string(c.name) + " exact route");
    o.require(std::abs(a.value - t) <= kAnalyticTol, std::string(c.name) + " analytic " + fmt(a.value));
    o.require(std::abs(quad.value - t) <= kAnalyticTol, std::string(c.name) + " quadrature " + fmt(quad.value));
    EstimatorConfig mc;
    mc.n_samples = kMcDraws;
    mc.seed = 1;
    const Estimate e = estimate(f.scenario, c.policy, mc).first;
    o.require(within_se(e, t), std::string(c.name) + " mc " + fmt(e.value) + " +- " + fmt(e.std_error));
    if (o.pass) {
      o.detail += std::string(o.detail.empty() ? "" : ", ") + c.name + " " + to_string(c.truth) + " quad " +
                  fmt(quad.value) + " mc " + fmt(e.value) + "+-" + fmt(e.std_error);
    }
  }
  return o;
}

Outcome normal_closed_forms() {
  Outcome o;
  const double mu1 = 1.0;
  int grid = 0;
  double worst_z = 0;
  for (double mu2 : {-1.0, 0.0, 1.0}) {
    for (double s1 : {0.5, 1.0, 2.0}) {
      for (double s2 : {0.5, 1.0, 2.0}) {
        const double iid = iid_normal_max(mu1, s1);
        const double aware = aware_normal_max(mu1, s1, mu2, s2);
        o.require(std::abs(clark_normal_max(mu1, s1 * s1, mu1, s1 * s1) - iid) <= kIdentityTol, "iid identity");
        o.require(std::abs(clark_normal_max(mu1 + mu2, s1 * s1 + s2 * s2, mu1, s1 * s1) - aware) <= kIdentityTol,
                  "aware identity");
        Scenario s;
        s.n_bidders = 2;
        s.m_characteristics = 2;
        const auto x1 = Distribution::normal(mu1, s1), x2 = Distribution::normal(mu2, s2);
        s.laws = {{x1, x2}, {x1, x2}};
        const auto plan = uniform_plan(2, 2, InfoLevel::full());
        EstimatorConfig mc;
        mc.n_samples = kMcDraws;
        mc.seed = 1;
        const Estimate raised =
            estimate(s, policy_from_plan({AwarenessSet::of({1, 2}), AwarenessSet::of({1})}, plan), mc).first;
        const Estimate common =
            estimate(s, policy_from_plan({AwarenessSet::of({1}), AwarenessSet::of({1})}, plan), mc).first;
        const std::string at = "(" + fmt(mu2) + "," + fmt(s1) + "," + fmt(s2) + ")";
        o.require(within_se(raised, aware), "aware mc at " + at);
        o.require(within_se(common, iid), "iid mc at " + at);
        worst_z = std::max({worst_z, std::abs(raised.value - aware) / raised.std_error,
                            std::abs(common.value - iid) / common.std_error});
        ++grid;
      }
    }
  }
  if (o.pass) o.detail = std::to_string(grid) + " grid points, worst |z| " + fmt(worst_z);
  return o;
}

Outcome two_coin_revenue() {
  Outcome o;
  const ScenarioFile f = parse_scenario(kDir + "/coins.json");
  const EstimateBundle b = estimate(f.scenario, f.policy, exact_config());
  const oracle::Result r = oracle::solve(oracle::from_scenario(f.scenario, f.policy));
  auto is = [&](const Estimate& e, const Rational& want, const char* what) {
    o.require(e.exact && *e.exact == want, std::string(what) + " = " + (e.exact ? to_string(*e.exact) : "?"));
  };
  is(b.bidders[0].perceived_surplus, q(9, 8), "fee 1");
  is(b.bidders[1].perceived_surplus, q(1, 4), "fee 2");
  is(b.bidders[1].actual_surplus, q(1, 8), "fee 2 full view");
  is(b.bidders[1].rent, q(1, 8), "rent 2");
  is(b.first, q(13, 8), "first order");
  is(b.second, q(3, 8), "second order");
  is(b.revenue_from_fees, q(7, 4), "revenue via fees");
  is(b.revenue_from_rents, q(7, 4), "revenue via rents");
  is(b.residual, q(0), "residual");
  o.require(r.revenue_fees == q(7, 4) && r.revenue_rents == q(7, 4) && r.rent[1] == q(1, 8), "oracle disagrees");
  if (o.pass) o.detail = "fees 9/8, 1/4; rent 1/8; revenue 7/4 both routes; residual 0";
  return o;
}

Outcome single_raise() {
  Outcome o;
  const ScenarioFile base = parse_scenario(kDir + "/coins.json");
  const ScenarioFile ext = parse_scenario(kDir + "/coins_both_aware.json");
  const TradeoffBreakdown t = check_tradeoff(base.scenario, base.policy, 1, 1, exact_config());
  o.require(t.delta_first_order_stat.exact == q(1, 2), "delta first order");
  o.require(t.lost_rent_newly_aware.exact == q(1, 8), "lost rent");
  o.require(t.raise, "decision");
  o.require(t.revenue_after.exact == q(17, 8), "post-raise revenue");
  const EstimateBundle b = estimate(ext.scenario, ext.policy, exact_config());
  o.require(b.revenue_from_fees.exact == q(17, 8), "extended scenario revenue");
  if (o.pass) o.detail = "delta 1/2, lost rent 1/8, raise, revenue 7/4 -> 17/8";
  return o;
}

Outcome claim_suite() {
  Outcome o;
  CorpusConfig cc;
  cc.seed = 1;
  cc.count = 100;
  VerifyConfig vc;
  const VerificationReport rep = verify_suite(generate_corpus(cc), vc);
  int checked = 0;
  for (const auto& s : rep.summary()) {
    checked += s.hypothesis_met;
    if (s.fails > 0 || s.inconclusive > 0) {
      o.require(false, std::string(claim_name(s.claim)) + " " + std::to_string(s.fails) + "/" +
                           std::to_string(s.hypothesis_met) + " fail");
    }
  }
  o.detail = std::to_string(rep.scenarios) + " scenarios, " + std::to_string(checked) + " instances" +
             (o.pass ? "" : ": ") + (o.pass ? "" : o.detail);
  return o;
}

// Random scenario mixing uniform, normal and discrete laws.
Scenario ks_scenario(std::uint64_t seed, DisclosurePolicy& policy) {
  std::mt19937_64 rng(seed);
  auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  Scenario s;
  s.n_bidders = pick(2, 4);
  s.m_characteristics = pick(1, 3);
  s.laws.assign(static_cast<std::size_t>(s.n_bidders), {});
  for (auto& row : s.laws) {
    for (int j = 0; j < s.m_characteristics; ++j) {
      switch (pick(0, 2)) {
        case 0: {
          const int lo = pick(-3, 1);
          row.push_back(Distribution::uniform(lo, lo + pick(1, 5)));
          break;
        }
        case 1:
          row.push_back(Distribution::normal(pick(-4, 4) / 2.0, pick(1, 4) / 2.0));
          break;
        default: {
          std::vector<Atom> atoms;
          const int k = pick(2, 3);
          for (int a = 0; a < k; ++a) atoms.push_back({q(pick(-4, 4) + 10 * a), q(1, static_cast<unsigned long>(k))});
          row.push_back(Distribution::discrete(atoms));
        }
      }
    }
  }
  std::vector<AwarenessSet> aware;
  for (int i = 0; i < s.n_bidders; ++i) {
    aware.push_back(AwarenessSet::from_bits(1u | (static_cast<std::uint32_t>(rng()) & ((1u << s.m_characteristics) - 1))));
  }
  policy = policy_from_plan(aware, uniform_plan(s.n_bidders, s.m_characteristics, InfoLevel::full()));
  return s;
}

// sup |F_n - G| over both one-sided limits at every sample point.
double ks_distance(std::vector<double> xs, const OrderStatLaw& law) {
  std::sort(xs.begin(), xs.end());
  const double n = static_cast<double>(xs.size());
  double d = 0;
  for (std::size_t k = 0; k < xs.size();) {
    std::size_t e = k;
    while (e < xs.size() && xs[e] == xs[k]) ++e;
    d = std::max(d, std::abs(static_cast<double>(k) / n - law.cdf_left(xs[k])));
    d = std::max(d, std::abs(static_cast<double>(e) / n - law.cdf(xs[k])));
    k = e;
  }
  return d;
}

Outcome order_laws() {
  Outcome o;
  const double crit = std::sqrt(-std::log(kKsAlpha / 2) / 2) / std::sqrt(static_cast<double>(kKsDraws));
  double worst = 0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    DisclosurePolicy p;
    const Scenario s = ks_scenario(seed, p);
    const AwarenessSet all = full_set(s);
    std::vector<ValuationLaw> laws;
    for (int i = 0; i < s.n_bidders; ++i) laws.push_back(valuation_law(s, p, i, all));
    std::vector<double> top, second;
    for (std::uint64_t d = 0; d < kKsDraws; ++d) {
      std::vector<double> b = bids(s, p, draw_state(s, 1000 + seed, d), all).bids;
      std::partial_sort(b.begin(), b.begin() + 2, b.end(), std::greater<>());
      top.push_back(b[0]);
      second.push_back(b[1]);
    }
    const double d1 = ks_distance(top, order_cdf(laws, 1)), d2 = ks_distance(second, order_cdf(laws, 2));
    worst = std::max({worst, d1, d2});
    o.require(d1 <= crit, "seed " + std::to_string(seed) + " max D=" + fmt(d1));
    o.require(d2 <= crit, "seed " + std::to_string(seed) + " second D=" + fmt(d2));
  }
  std::mt19937_64 rng(6);
  int compared = 0;
  for (int n = 1; n <= 6; ++n) {
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<Rational> c;
      for (int i = 0; i < n; ++i) c.push_back(q(static_cast<long>(rng() % 101), 100));
      Rational g1 = order_cdf_general(c, 1, Rational(0), Rational(1));
      Rational p1 = order_cdf_product(c);
      g1.canonicalize();
      p1.canonicalize();
      o.require(g1 == p1, "permanent vs product at n=" + std::to_string(n));
      if (n >= 2) {
        Rational g2 = order_cdf_general(c, 2, Rational(0), Rational(1));
        Rational p2 = order_cdf_second(c, Rational(1));
        g2.canonicalize();
        p2.canonicalize();
        o.require(g2 == p2, "permanent vs two-term at n=" + std::to_string(n));
      }
      ++compared;
    }
  }
  if (o.pass) {
    o.detail = "worst D " + fmt(worst) + " <= " + fmt(crit) + " (alpha " + fmt(kKsAlpha) + ", n " +
               std::to_string(kKsDraws) + "); " + std::to_string(compared) + " exact permanent comparisons";
  }
  return o;
}

Outcome determinism() {
  Outcome o;
  const std::vector<std::vector<std::string>> commands{
      {"fees", "--scenario", kDir + "/uniform_extra.json", "--samples", "200000"},
      {"revenue", "--scenario", kDir + "/coins.json"},
      {"curse", "--scenario", kDir + "/hidden_characteristic.json", "--format", "text"},
      {"orderstats", "--scenario", kDir + "/normal_pair.json"},
      {"optimize", "--scenario", kDir + "/public_full_info.json", "--regime", "public-full-info", "--samples",
       "100000"},
      {"tradeoff", "--scenario", kDir + "/coins.json", "--bidder", "2", "--char", "2"},
      {"verify", "--seed", "2", "--count", "5"},
      {"generate", "--seed", "3", "--count", "1"},
      {"counterexamples", "--claim", "raise-negative-mean", "--count", "10"},
  };
  auto run = [](const std::vector<std::string>& args, int& code) {
    std::ostringstream out, err;
    code = run_command(args, out, err);
    return out.str() + "\x1f" + err.str();
  };
  for (const auto& args : commands) {
    int c1 = 0, c2 = 0;
    const std::string a = run(args, c1), b = run(args, c2);
    o.require(a == b && c1 == c2, args[0] + " differs between runs");
    o.require(c1 != kExitInputError, args[0] + " failed: " + a.substr(a.find('\x1f') + 1));
  }
  for (const char* name : {"uniform_extra.json", "normal_pair.json", "hidden_characteristic.json"}) {
    std::vector<std::string> args{"revenue", "--scenario", kDir + "/" + name, "--backend", "mc", "--samples", "100000"};
    int c1 = 0, c2 = 0;
    const std::string one = run(args, c1);
    args.insert(args.end(), {"--workers", "4"});
    o.require(run(args, c2) == one, std::string(name) + " depends on worker count");
  }
  if (o.pass) o.detail = std::to_string(commands.size()) + " commands byte-identical; 3 scenarios worker-invariant";
  return o;
}

Outcome winners_curse() {
  Outcome o;
  const ScenarioFile f = parse_scenario(kDir + "/hidden_characteristic.json");
  const CurseReport c = curse_gap(f.scenario, f.policy, exact_config());
  const oracle::Result r = oracle::solve(oracle::from_scenario(f.scenario, f.policy));
  int unaware = 0;
  for (int i = 0; i < f.scenario.n_bidders; ++i) {
    const CurseLine& line = c.bidders[static_cast<std::size_t>(i)];
    if (line.fully_aware) continue;
    ++unaware;
    Rational mu = 0;
    for (int j = 0; j < f.scenario.m_characteristics; ++j) {
      if (!f.policy.aware(i).contains(j)) mu += *exact_mean(f.scenario.law(i, j));
    }
    const Rational want = mu * r.actual_win[static_cast<std::size_t>(i)];
    o.require(line.gap.exact && *line.gap.exact == want,
              "bidder " + std::to_string(i + 1) + " gap " + (line.gap.exact ? to_string(*line.gap.exact) : "?") +
                  " vs " + to_string(want));
    if (o.pass) {
      o.detail += std::string(o.detail.empty() ? "" : ", ") + "bidder " + std::to_string(i + 1) + " gap " +
                  to_string(*line.gap.exact) + " = " + to_string(mu) + " x " +
                  to_string(r.actual_win[static_cast<std::size_t>(i)]);
    }
  }
  o.require(unaware > 0, "no unaware bidder");
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> run;
    double budget;
  };
  const std::vector<Criterion> criteria{
      {1, "uniform example order statistics", uniform_order_stats, kBudget1},
      {2, "normal closed forms", normal_closed_forms, kBudget2},
      {3, "two-bidder discrete revenue", two_coin_revenue, 0},
      {4, "single raise trade-off", single_raise, 0},
      {5, "claim suite on random discrete scenarios", claim_suite, kBudget5},
      {6, "order statistic laws", order_laws, 0},
      {7, "determinism", determinism, 0},
      {8, "winner's curse gap", winners_curse, 0},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.budget > 0) o.require(secs < c.budget, "over budget of " + fmt(c.budget) + " s");
    std::printf("criterion %d %s: %s [%s] (%.2f s)\n", c.id, c.name, o.pass ? "PASS" : "FAIL", o.detail.c_str(), secs);
    std::fflush(stdout);
    failed += !o.pass;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
