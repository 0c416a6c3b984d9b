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

#include "awarebid/verify.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <functional>
#include <thread>

#include "awarebid/orderstats.hpp"

namespace awarebid {
namespace {

using AtomList = std::vector<std::pair<Rational, Rational>>;

enum class Kind { kStrict, kWeak, kZero };

Verdict judge(const Estimate& margin, Kind kind) {
  if (margin.exact) {
    const int s = sgn(*margin.exact);
    switch (kind) {
      case Kind::kStrict:
        return s > 0 ? Verdict::kHolds : Verdict::kFails;
      case Kind::kWeak:
        return s >= 0 ? Verdict::kHolds : Verdict::kFails;
      case Kind::kZero:
        return s == 0 ? Verdict::kHolds : Verdict::kFails;
    }
  }
  const double z = 4.0 * margin.std_error;
  switch (kind) {
    case Kind::kStrict:
      if (margin.value > z) return Verdict::kHolds;
      return margin.value < -z ? Verdict::kFails : Verdict::kInconclusive;
    case Kind::kWeak:
      return margin.value >= -z ? Verdict::kHolds : Verdict::kFails;
    case Kind::kZero:
      return std::abs(margin.value) <= z ? Verdict::kHolds : Verdict::kFails;
  }
  return Verdict::kInconclusive;
}

std::string policy_key(const DisclosurePolicy& p) {
  std::string key;
  for (std::size_t i = 0; i < p.awareness.size(); ++i) {
    key += std::to_string(p.awareness[i].bits()) + ":";
    for (const auto& level : p.info[i]) key += (level ? describe(*level) : std::string("-")) + ",";
    key += ";";
  }
  return key;
}

Estimate constant(const Rational& q, bool exact) {
  return {q.get_d(), 0.0, exact ? std::optional<Rational>(q) : std::nullopt};
}

Estimate abs_of(const Estimate& e) {
  Estimate out = e;
  out.value = std::abs(e.value);
  if (e.exact) out.exact = abs(*e.exact);
  return out;
}

std::string set_text(const AwarenessSet& a) { return a.to_string(); }

AtomList add_laws(const AtomList& a, const AtomList& b) {
  std::map<Rational, Rational> acc;
  for (const auto& [x, p] : a) {
    for (const auto& [y, q] : b) {
      Rational v = x + y, w = p * q;
      v.canonicalize();
      w.canonicalize();
      acc[v] += w;
    }
  }
  return {acc.begin(), acc.end()};
}

AtomList cell_law(const Distribution& d, const InfoLevel& level) {
  std::map<Rational, Rational> acc;
  for (const auto& c : exact_cells(d, level)) acc[c.mean] += c.prob;
  return {acc.begin(), acc.end()};
}

class Checker {
 public:
  Checker(const CorpusScenario& sc, const VerifyConfig& cfg)
      : sc_(sc), s_(sc.scenario), cfg_(cfg), exact_(cfg.estimator.backend == Backend::kExact) {}

  VerificationReport run() {
    VerificationReport report;
    report.scenarios = 1;
    identity();
    single_raises();
    tradeoffs();
    public_no_info();
    public_full_info();
    full_info_optimal();
    equal_awareness();
    report.checks = std::move(checks_);
    if (cfg_.compare_greedy && greedy_differs()) report.greedy_mismatches.push_back(sc_.id);
    return report;
  }

 private:
  const EstimateBundle& est(const DisclosurePolicy& p) {
    const DisclosurePolicy v = validate(s_, p);
    const std::string key = policy_key(v);
    auto it = cache_.find(key);
    if (it == cache_.end()) it = cache_.emplace(key, estimate(s_, v, cfg_.estimator)).first;
    return it->second;
  }

  DisclosurePolicy common(const AwarenessSet& a) const {
    return policy_from_plan(std::vector<AwarenessSet>(static_cast<std::size_t>(s_.n_bidders), a), sc_.plan);
  }

  Rational mu(int i, int j) const { return *exact_mean(s_.law(i, j)); }

  void add(Claim c, bool hypothesis, const Estimate& margin, Kind kind, std::string detail) {
    checks_.push_back({sc_.id, c, hypothesis, judge(margin, kind), margin, std::move(detail)});
  }

  // Awareness sets containing the default characteristic but not `ell`.
  std::vector<AwarenessSet> bases_without(int ell) const {
    std::vector<AwarenessSet> out;
    for (const auto& a : lattice(s_.m_characteristics)) {
      if (!a.contains(ell)) out.push_back(a);
    }
    return out;
  }

  void identity() {
    for (const auto& p : {sc_.policy, common(AwarenessSet::all(s_.m_characteristics))}) {
      const auto& b = est(p);
      std::ostringstream d;
      d << "policy";
      for (const auto& a : p.awareness) d << " " << set_text(a);
      add(Claim::kRevenueIdentity, true, abs_of(b.residual), Kind::kZero, d.str());
    }
  }

  void single_raises() {
    const int n = s_.n_bidders;
    for (int ell = 1; ell < s_.m_characteristics; ++ell) {
      for (const auto& base_set : bases_without(ell)) {
        const DisclosurePolicy base = common(base_set);
        const auto& b0 = est(base);
        for (int b = 0; b < n; ++b) {
          DisclosurePolicy after = base;
          after.awareness[static_cast<std::size_t>(b)] = base_set.with(ell);
          after.info[static_cast<std::size_t>(b)][static_cast<std::size_t>(ell)] =
              sc_.plan[static_cast<std::size_t>(b)][static_cast<std::size_t>(ell)];
          const auto& b1 = est(after);
          const bool hyp = sgn(mu(b, ell)) > 0;
          std::ostringstream d;
          d << "bidder " << b + 1 << " learns of " << ell + 1 << " from common " << set_text(base_set)
            << ", mean " << to_string(mu(b, ell));
          add(Claim::kSingleRaiseRevenue, hyp, difference(b1.revenue_from_fees, b0.revenue_from_fees), Kind::kStrict,
              d.str());
          add(Claim::kSingleRaiseFirstOrder, hyp, difference(b1.first, b0.first), Kind::kStrict, d.str());
          Estimate rents = constant(0, exact_);
          for (int i = 0; i < n; ++i) {
            if (i != b) rents = sum(rents, b1.bidders[static_cast<std::size_t>(i)].rent);
          }
          add(Claim::kSingleRaiseRemainingRents, hyp, rents, Kind::kStrict, d.str());
        }
      }
    }
  }

  void tradeoffs() {
    const int n = s_.n_bidders;
    for (int ell = 1; ell < s_.m_characteristics; ++ell) {
      for (const auto& base_set : bases_without(ell)) {
        for (int t = 0; t < n; ++t) {
          for (unsigned group = 1; group < (1u << n); ++group) {
            if ((group >> t) & 1u) continue;
            DisclosurePolicy base = common(base_set);
            bool all_aware_positive = true;
            std::vector<int> remaining;
            for (int i = 0; i < n; ++i) {
              if ((group >> i) & 1u) {
                base.awareness[static_cast<std::size_t>(i)] = base_set.with(ell);
                base.info[static_cast<std::size_t>(i)][static_cast<std::size_t>(ell)] =
                    sc_.plan[static_cast<std::size_t>(i)][static_cast<std::size_t>(ell)];
                all_aware_positive = all_aware_positive && sgn(mu(i, ell)) > 0;
              } else if (i != t) {
                remaining.push_back(i);
              }
            }
            const InfoLevel level = sc_.plan[static_cast<std::size_t>(t)][static_cast<std::size_t>(ell)];
            const TradeoffBreakdown tb = check_tradeoff(s_, base, t, ell, cfg_.estimator, level);
            DisclosurePolicy after = base;
            after.awareness[static_cast<std::size_t>(t)] = base_set.with(ell);
            after.info[static_cast<std::size_t>(t)][static_cast<std::size_t>(ell)] = level;
            const auto& b0 = est(base);
            const auto& b1 = est(after);

            std::ostringstream d;
            d << "bidder " << t + 1 << " learns of " << ell + 1 << "; aware of it already:";
            for (int i = 0; i < n; ++i) {
              if ((group >> i) & 1u) d << " " << i + 1;
            }
            d << "; others at " << set_text(base_set) << ", mean " << to_string(mu(t, ell));

            // The decision must agree with the direct revenue comparison, and
            // the three components must add up to the revenue change.
            const Estimate change = difference(tb.revenue_after, tb.revenue_before);
            const Estimate parts =
                difference(sum(tb.delta_first_order_stat, tb.delta_rents_remaining_unaware), tb.lost_rent_newly_aware);
            Estimate deviation = abs_of(difference(parts, change));
            const bool direct_raise = exact_ ? sgn(*change.exact) > 0 : change.value > 0;
            if (direct_raise != tb.raise) {
              deviation = constant(1, exact_);
              d << " [decision " << (tb.raise ? "raise" : "keep") << " disagrees with revenue change]";
            }
            add(Claim::kTradeoffConsistency, true, deviation, Kind::kZero, d.str());

            const bool hyp = sgn(mu(t, ell)) > 0;
            add(Claim::kTradeoffFirstOrder, hyp, tb.delta_first_order_stat, Kind::kStrict, d.str());
            Estimate rents = constant(0, exact_);
            for (int i : remaining) {
              const auto k = static_cast<std::size_t>(i);
              rents = sum(rents, difference(b1.bidders[k].rent, b0.bidders[k].rent));
            }
            add(Claim::kTradeoffRemainingRents, hyp && !remaining.empty(), rents, Kind::kStrict, d.str());
            add(Claim::kTradeoffLostRent, all_aware_positive, b0.bidders[static_cast<std::size_t>(t)].rent,
                Kind::kStrict, d.str());
          }
        }
      }
    }
  }

  bool iid_column(int ell) const {
    for (int i = 1; i < s_.n_bidders; ++i) {
      if (!(s_.law(i, ell) == s_.law(0, ell))) return false;
    }
    return true;
  }

  DisclosurePolicy regime_policy(Regime r, const AwarenessSet& a) const {
    std::uint64_t code = 0;
    for (int j = 1; j < s_.m_characteristics; ++j) {
      if (a.contains(j)) code |= std::uint64_t{1} << (j - 1);
    }
    return *decode_candidate(s_, r, sc_.plan, code);
  }

  void public_no_info() {
    for (int ell = 1; ell < s_.m_characteristics; ++ell) {
      const bool hyp = iid_column(ell);
      const Rational m = mu(0, ell);
      for (const auto& base_set : bases_without(ell)) {
        const auto& b0 = est(regime_policy(Regime::kPublicNoInfo, base_set));
        const auto& b1 = est(regime_policy(Regime::kPublicNoInfo, base_set.with(ell)));
        const Estimate change = difference(b1.revenue_from_fees, b0.revenue_from_fees);
        std::ostringstream d;
        d << "common " << set_text(base_set) << " plus " << ell + 1 << ", mean " << to_string(m) << ", change "
          << (change.exact ? to_string(*change.exact) : std::to_string(change.value));
        add(Claim::kPublicNoInfoShift, hyp, abs_of(difference(change, constant(m, exact_))), Kind::kZero, d.str());
      }
    }
  }

  void public_full_info() {
    for (int ell = 1; ell < s_.m_characteristics; ++ell) {
      std::vector<AtomList> column;
      for (int i = 0; i < s_.n_bidders; ++i) column.push_back(cell_law(s_.law(i, ell), InfoLevel::full()));
      const Rational emax = exact_expected_max(column);
      const bool hyp = sgn(emax) < 0;
      for (const auto& base_set : bases_without(ell)) {
        const auto& b0 = est(regime_policy(Regime::kPublicFullInfo, base_set));
        const auto& b1 = est(regime_policy(Regime::kPublicFullInfo, base_set.with(ell)));
        std::ostringstream d;
        d << "common " << set_text(base_set) << " plus " << ell + 1 << ", E[max] " << to_string(emax);
        add(Claim::kPublicFullInfoKeep, hyp, difference(b0.revenue_from_fees, b1.revenue_from_fees), Kind::kStrict,
            d.str());
      }
    }
  }

  void full_info_optimal() {
    const int n = s_.n_bidders;
    for (const auto& a : lattice(s_.m_characteristics)) {
      // Distinct valuation laws each bidder can end up with, over every
      // partition of every characteristic in `a`.
      std::vector<std::vector<AtomList>> options(static_cast<std::size_t>(n));
      std::vector<std::size_t> full_index(static_cast<std::size_t>(n));
      for (int i = 0; i < n; ++i) {
        std::vector<AtomList> laws{AtomList{{Rational(0), Rational(1)}}};
        AtomList full{{Rational(0), Rational(1)}};
        for (int j : a.ids()) {
          const Distribution& d = s_.law(i, j - 1);
          std::vector<AtomList> next;
          for (const auto& labels : set_partitions(static_cast<int>(*d.support_size()))) {
            const AtomList part = cell_law(d, canonicalize(d, InfoLevel::groups(labels)));
            for (const auto& l : laws) next.push_back(add_laws(l, part));
          }
          std::sort(next.begin(), next.end());
          next.erase(std::unique(next.begin(), next.end()), next.end());
          laws = std::move(next);
          full = add_laws(full, cell_law(d, InfoLevel::full()));
        }
        full_index[static_cast<std::size_t>(i)] =
            static_cast<std::size_t>(std::lower_bound(laws.begin(), laws.end(), full) - laws.begin());
        options[static_cast<std::size_t>(i)] = std::move(laws);
      }
      DisclosurePolicy full_policy = common(a);
      for (int i = 0; i < n; ++i) {
        for (int j : a.ids()) full_policy.info[static_cast<std::size_t>(i)][static_cast<std::size_t>(j - 1)] =
            InfoLevel::full();
      }
      const Estimate reference = est(full_policy).revenue_from_fees;
      std::ostringstream d;
      d << "common " << set_text(a);

      std::uint64_t combos = 1;
      for (const auto& o : options) combos *= o.size();
      if (combos > cfg_.max_partition_combos) {
        d << ": " << combos << " assignments exceed the cap";
        checks_.push_back({sc_.id, Claim::kFullInfoOptimal, true, Verdict::kInconclusive, {}, d.str()});
        continue;
      }
      const auto [best, best_combo] = best_competitor(options, full_index, reference.value);
      if (best_combo.empty()) {
        d << ": no coarser assignment";
        add(Claim::kFullInfoOptimal, true, constant(0, exact_), Kind::kWeak, d.str());
        continue;
      }
      d << ", " << combos << " assignments, best coarser " << to_string(best);
      add(Claim::kFullInfoOptimal, true, difference(reference, constant(best, exact_)), Kind::kWeak, d.str());
    }
  }

  // Largest E[max] over every assignment except all-full, screened in double
  // on a common grid and rechecked exactly near the top.
  std::pair<Rational, std::vector<std::size_t>> best_competitor(const std::vector<std::vector<AtomList>>& options,
                                                                const std::vector<std::size_t>& full_index,
                                                                double reference) const {
    const std::size_t n = options.size();
    std::vector<double> grid;
    for (const auto& o : options) {
      for (const auto& law : o) {
        for (const auto& atom : law) grid.push_back(atom.first.get_d());
      }
    }
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    const std::size_t g = grid.size();
    std::vector<std::vector<std::vector<double>>> cdfs(n);
    for (std::size_t i = 0; i < n; ++i) {
      for (const auto& law : options[i]) {
        std::vector<double> f(g, 0.0);
        std::size_t k = 0;
        double acc = 0;
        for (std::size_t x = 0; x < g; ++x) {
          while (k < law.size() && law[k].first.get_d() <= grid[x]) acc += law[k++].second.get_d();
          f[x] = acc;
        }
        cdfs[i].push_back(std::move(f));
      }
    }
    std::vector<std::vector<std::size_t>> near;
    double best_value = -INFINITY;
    std::vector<std::size_t> best_combo;
    std::vector<std::size_t> combo(n, 0);
    std::vector<std::vector<double>> partial(n, std::vector<double>(g));
    // Odometer over assignments with running CDF products.
    auto refresh = [&](std::size_t from) {
      for (std::size_t i = from; i < n; ++i) {
        const auto& f = cdfs[i][combo[i]];
        for (std::size_t x = 0; x < g; ++x) partial[i][x] = i == 0 ? f[x] : partial[i - 1][x] * f[x];
      }
    };
    refresh(0);
    for (;;) {
      bool all_full = true;
      for (std::size_t i = 0; i < n; ++i) all_full = all_full && combo[i] == full_index[i];
      if (!all_full) {
        const auto& p = partial[n - 1];
        double e = grid[0] * p[0];
        for (std::size_t x = 1; x < g; ++x) e += grid[x] * (p[x] - p[x - 1]);
        if (e > best_value) {
          best_value = e;
          best_combo = combo;
        }
        if (e >= reference - 1e-9 && near.size() < 4096) near.push_back(combo);
      }
      std::size_t i = n;
      while (i > 0) {
        --i;
        if (++combo[i] < options[i].size()) break;
        combo[i] = 0;
        if (i == 0) {
          i = n;
          break;
        }
      }
      if (i == n) break;
      refresh(i);
    }
    if (best_combo.empty()) return {Rational(0), {}};
    near.push_back(best_combo);
    Rational best;
    bool first = true;
    std::vector<std::size_t> arg;
    for (const auto& c : near) {
      std::vector<AtomList> laws;
      for (std::size_t i = 0; i < n; ++i) laws.push_back(options[i][c[i]]);
      const Rational e = exact_expected_max(laws);
      if (first || e > best) {
        best = e;
        arg = c;
        first = false;
      }
    }
    return {best, arg};
  }

  void equal_awareness() {
    for (const auto& a : lattice(s_.m_characteristics)) {
      const auto& b = est(common(a));
      Estimate worst = constant(0, exact_);
      for (const auto& x : b.bidders) {
        const Estimate r = abs_of(x.rent);
        const bool larger = r.exact && worst.exact ? *r.exact > *worst.exact : r.value > worst.value;
        if (larger) worst = r;
      }
      add(Claim::kEqualAwarenessZeroRent, true, worst, Kind::kZero, "common " + set_text(a));
    }
  }

  bool greedy_differs() const {
    OptimizeConfig oc;
    oc.estimator = cfg_.estimator;
    oc.plan = sc_.plan;
    const OptimizeResult full = optimize(s_, Regime::kIndividual, oc);
    oc.exhaustive_bits = -1;
    const OptimizeResult greedy = optimize(s_, Regime::kIndividual, oc);
    const Estimate gap = difference(full.report.total_revenue, greedy.report.total_revenue);
    return gap.exact ? sgn(*gap.exact) != 0 : std::abs(gap.value) > 4.0 * gap.std_error;
  }

  const CorpusScenario& sc_;
  const Scenario& s_;
  const VerifyConfig& cfg_;
  bool exact_;
  std::map<std::string, EstimateBundle> cache_;
  std::vector<ClaimCheck> checks_;
};

constexpr std::string_view kClaimNames[kClaimCount] = {
    "revenue_identity",           "single_raise_revenue",      "single_raise_first_order",
    "single_raise_remaining_rents", "tradeoff_consistency",    "tradeoff_first_order",
    "tradeoff_remaining_rents",   "tradeoff_lost_rent",        "public_no_info_shift",
    "public_full_info_keep",      "full_info_optimal",         "equal_awareness_zero_rent",
};

}  // namespace

std::string_view claim_name(Claim c) { return kClaimNames[static_cast<int>(c)]; }

std::optional<Claim> parse_claim(std::string_view name) {
  for (int k = 0; k < kClaimCount; ++k) {
    if (kClaimNames[k] == name) return static_cast<Claim>(k);
  }
  return std::nullopt;
}

std::string_view verdict_name(Verdict v) {
  switch (v) {
    case Verdict::kHolds:
      return "holds";
    case Verdict::kFails:
      return "fails";
    case Verdict::kInconclusive:
      return "inconclusive";
  }
  return "?";
}

std::vector<CorpusScenario> generate_corpus(const CorpusConfig& config) {
  if (config.min_bidders < 2 || config.max_bidders < config.min_bidders || config.min_characteristics < 1 ||
      config.max_characteristics < config.min_characteristics || config.min_atoms < 2 ||
      config.max_atoms < config.min_atoms || 2 * config.value_bound + 1 < config.max_atoms || config.max_weight < 1) {
    throw std::invalid_argument("inconsistent corpus bounds");
  }
  std::mt19937_64 rng(config.seed);
  auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  auto chance = [&] { return std::uniform_real_distribution<double>(0.0, 1.0)(rng); };
  auto random_law = [&] {
    const int k = pick(config.min_atoms, config.max_atoms);
    std::vector<int> values;
    for (int v = -config.value_bound; v <= config.value_bound; ++v) values.push_back(v);
    std::shuffle(values.begin(), values.end(), rng);
    values.resize(static_cast<std::size_t>(k));
    std::sort(values.begin(), values.end());
    std::vector<long> weights;
    long total = 0;
    for (int a = 0; a < k; ++a) total += weights.emplace_back(pick(1, config.max_weight));
    std::vector<Atom> atoms;
    for (int a = 0; a < k; ++a) {
      atoms.push_back({Rational(values[static_cast<std::size_t>(a)]),
                       make_rational(weights[static_cast<std::size_t>(a)], static_cast<unsigned long>(total))});
    }
    return Distribution::discrete(std::move(atoms));
  };

  std::vector<CorpusScenario> out;
  for (int id = 0; id < config.count; ++id) {
    CorpusScenario sc;
    sc.id = id;
    Scenario& s = sc.scenario;
    s.n_bidders = pick(config.min_bidders, config.max_bidders);
    s.m_characteristics = pick(config.min_characteristics, config.max_characteristics);
    const auto n = static_cast<std::size_t>(s.n_bidders), m = static_cast<std::size_t>(s.m_characteristics);
    s.laws.assign(n, std::vector<Distribution>(m, Distribution::discrete({{0, make_rational(1, 2)}, {1, make_rational(1, 2)}})));
    for (std::size_t j = 0; j < m; ++j) {
      if (chance() < config.iid_column) {
        const Distribution d = random_law();
        for (std::size_t i = 0; i < n; ++i) s.laws[i][j] = d;
      } else {
        for (std::size_t i = 0; i < n; ++i) s.laws[i][j] = random_law();
      }
    }
    sc.plan.assign(n, std::vector<InfoLevel>(m));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < m; ++j) {
        const double u = chance();
        const Distribution& d = s.laws[i][j];
        if (u < config.full_info) {
          sc.plan[i][j] = InfoLevel::full();
        } else if (u < config.full_info + config.no_info) {
          sc.plan[i][j] = InfoLevel::none();
        } else {
          std::vector<int> labels;
          for (std::size_t a = 0; a < *d.support_size(); ++a) {
            labels.push_back(pick(0, static_cast<int>(*d.support_size()) - 1));
          }
          sc.plan[i][j] = canonicalize(d, InfoLevel::groups(labels));
        }
      }
    }
    std::vector<AwarenessSet> awareness;
    for (std::size_t i = 0; i < n; ++i) {
      AwarenessSet a = AwarenessSet::of({1});
      for (int j = 1; j < s.m_characteristics; ++j) {
        if (chance() < 0.5) a = a.with(j);
      }
      awareness.push_back(a);
    }
    sc.policy = validate(s, policy_from_plan(awareness, sc.plan));
    out.push_back(std::move(sc));
  }
  return out;
}

std::vector<ClaimSummary> VerificationReport::summary() const {
  std::vector<ClaimSummary> out(kClaimCount);
  for (int k = 0; k < kClaimCount; ++k) out[static_cast<std::size_t>(k)].claim = static_cast<Claim>(k);
  for (const auto& c : checks) {
    ClaimSummary& s = out[static_cast<std::size_t>(c.claim)];
    ++s.instances;
    if (!c.hypothesis) continue;
    ++s.hypothesis_met;
    switch (c.verdict) {
      case Verdict::kHolds:
        ++s.holds;
        break;
      case Verdict::kFails:
        ++s.fails;
        if (!s.first_failure) s.first_failure = c;
        break;
      case Verdict::kInconclusive:
        ++s.inconclusive;
        break;
    }
  }
  return out;
}

bool VerificationReport::failed() const {
  return std::any_of(checks.begin(), checks.end(),
                     [](const ClaimCheck& c) { return c.hypothesis && c.verdict == Verdict::kFails; });
}

VerificationReport verify_scenario(const CorpusScenario& sc, const VerifyConfig& config) {
  return Checker(sc, config).run();
}

VerificationReport verify_suite(const std::vector<CorpusScenario>& corpus, const VerifyConfig& config) {
  std::vector<VerificationReport> parts(corpus.size());
  const std::size_t workers = static_cast<std::size_t>(std::max(1, config.workers));
  auto work = [&](std::size_t w) {
    for (std::size_t k = w; k < corpus.size(); k += workers) parts[k] = verify_scenario(corpus[k], config);
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work, w);
    for (auto& t : pool) t.join();
  }
  VerificationReport out;
  for (auto& p : parts) {
    out.scenarios += p.scenarios;
    out.checks.insert(out.checks.end(), std::make_move_iterator(p.checks.begin()),
                      std::make_move_iterator(p.checks.end()));
    out.greedy_mismatches.insert(out.greedy_mismatches.end(), p.greedy_mismatches.begin(),
                                 p.greedy_mismatches.end());
  }
  return out;
}

std::string_view counterexample_name(CounterexampleKind k) {
  return k == CounterexampleKind::kRaiseNegativeMean ? "raise-negative-mean" : "keep-unaware-converse";
}

std::optional<CounterexampleKind> parse_counterexample(std::string_view name) {
  for (auto k : {CounterexampleKind::kRaiseNegativeMean, CounterexampleKind::kKeepUnawareConverse}) {
    if (counterexample_name(k) == name) return k;
  }
  return std::nullopt;
}

std::vector<Counterexample> counterexample_search(CounterexampleKind kind, const std::vector<CorpusScenario>& corpus,
                                                  const VerifyConfig& config) {
  std::vector<Counterexample> out;
  for (const auto& sc : corpus) {
    const Scenario& s = sc.scenario;
    auto revenue_of = [&](const DisclosurePolicy& p) { return estimate(s, p, config.estimator).revenue_from_fees; };
    for (int ell = 1; ell < s.m_characteristics; ++ell) {
      for (const auto& base_set : lattice(s.m_characteristics)) {
        if (base_set.contains(ell)) continue;
        std::uint64_t code = 0;
        for (int j = 1; j < s.m_characteristics; ++j) {
          if (base_set.contains(j)) code |= std::uint64_t{1} << (j - 1);
        }
        const std::uint64_t raised = code | (std::uint64_t{1} << (ell - 1));
        if (kind == CounterexampleKind::kRaiseNegativeMean) {
          // Common raise with full information, every bidder's mean negative.
          bool negative = true;
          for (int i = 0; i < s.n_bidders; ++i) negative = negative && sgn(*exact_mean(s.law(i, ell))) < 0;
          if (!negative) continue;
          const Estimate gain =
              difference(revenue_of(*decode_candidate(s, Regime::kPublicFullInfo, sc.plan, raised)),
                         revenue_of(*decode_candidate(s, Regime::kPublicFullInfo, sc.plan, code)));
          if (strict_sign(gain) > 0) {
            out.push_back({sc.id,
                           "common awareness of " + std::to_string(ell + 1) + " from " + base_set.to_string() +
                               " raises revenue although every mean is negative",
                           gain});
          }
        } else {
          std::vector<ValuationLaw> column;
          for (int i = 0; i < s.n_bidders; ++i) column.push_back(ValuationLaw::of(s.law(i, ell), InfoLevel::full()));
          const Moment emax = expected_order_stat(order_cdf(column, 1));
          const bool nonnegative = emax.exact ? sgn(*emax.exact) >= 0 : emax.value >= 0;
          if (!nonnegative) continue;
          const Estimate loss =
              difference(revenue_of(*decode_candidate(s, Regime::kPublicFullInfo, sc.plan, code)),
                         revenue_of(*decode_candidate(s, Regime::kPublicFullInfo, sc.plan, raised)));
          if (strict_sign(loss) >= 0 && (loss.exact || loss.value >= 0)) {
            out.push_back({sc.id,
                           "E[max] of characteristic " + std::to_string(ell + 1) + " is " +
                               (emax.exact ? to_string(*emax.exact) : std::to_string(emax.value)) +
                               " yet keeping everyone at " + base_set.to_string() + " is weakly better",
                           loss});
          }
        }
      }
    }
  }
  return out;
}

Rational exact_expected_max(const std::vector<std::vector<std::pair<Rational, Rational>>>& laws) {
  std::vector<Rational> grid;
  for (const auto& l : laws) {
    for (const auto& a : l) grid.push_back(a.first);
  }
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  Rational e = 0, previous = 0;
  std::vector<std::size_t> pos(laws.size(), 0);
  std::vector<Rational> cdf(laws.size(), Rational(0));
  for (const Rational& x : grid) {
    Rational p = 1;
    for (std::size_t i = 0; i < laws.size(); ++i) {
      while (pos[i] < laws[i].size() && laws[i][pos[i]].first <= x) cdf[i] += laws[i][pos[i]++].second;
      p *= cdf[i];
    }
    e += x * (p - previous);
    previous = p;
  }
  e.canonicalize();
  return e;
}

std::vector<std::vector<int>> set_partitions(int k) {
  // Restricted growth strings: label[a] <= 1 + max(label[0..a-1]).
  std::vector<std::vector<int>> out;
  if (k <= 0) return out;
  std::vector<int> labels(static_cast<std::size_t>(k), 0);
  std::function<void(int, int)> rec = [&](int a, int top) {
    if (a == k) {
      out.push_back(labels);
      return;
    }
    for (int v = 0; v <= top + 1; ++v) {
      labels[static_cast<std::size_t>(a)] = v;
      rec(a + 1, std::max(top, v));
    }
  };
  labels[0] = 0;
  rec(1, 0);
  return out;
}

}  // namespace awarebid
