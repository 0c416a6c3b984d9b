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

#include "awarebid/disclosure.hpp"

#include <cmath>
#include <map>

namespace awarebid {
namespace {

InfoLevel planned(const InfoPlan& plan, int i, int j) {
  if (plan.empty()) return InfoLevel::full();
  return plan.at(static_cast<std::size_t>(i)).at(static_cast<std::size_t>(j));
}

int informed_pairs(const DisclosurePolicy& p) {
  int count = 0;
  for (const auto& row : p.info) {
    for (const auto& level : row) count += level && level->kind != InfoLevel::Kind::kNone;
  }
  return count;
}

// -1, 0, +1 comparison of two revenue estimates.
int compare(const Estimate& a, const Estimate& b) {
  if (a.exact && b.exact) return cmp(*a.exact, *b.exact) < 0 ? -1 : (*a.exact == *b.exact ? 0 : 1);
  return a.value < b.value ? -1 : (a.value == b.value ? 0 : 1);
}

struct Candidate {
  std::uint64_t code = 0;
  DisclosurePolicy policy;
  Estimate revenue;
};

bool better(const Candidate& a, const Candidate& b) {
  const int c = compare(a.revenue, b.revenue);
  if (c != 0) return c > 0;
  const int pa = a.policy.aware_pairs(), pb = b.policy.aware_pairs();
  if (pa != pb) return pa < pb;
  const int ia = informed_pairs(a.policy), ib = informed_pairs(b.policy);
  if (ia != ib) return ia < ib;
  return a.code < b.code;
}

}  // namespace

std::string_view regime_name(Regime r) {
  switch (r) {
    case Regime::kIndividual:
      return "individual";
    case Regime::kPublicNoInfo:
      return "public-no-info";
    case Regime::kPublicFullInfo:
      return "public-full-info";
    case Regime::kCommonFreeInfo:
      return "common-free-info";
  }
  return "?";
}

std::optional<Regime> parse_regime(std::string_view name) {
  for (Regime r : {Regime::kIndividual, Regime::kPublicNoInfo, Regime::kPublicFullInfo, Regime::kCommonFreeInfo}) {
    if (regime_name(r) == name) return r;
  }
  return std::nullopt;
}

int search_bits(const Scenario& s, Regime r) {
  const int extra = s.m_characteristics - 1;
  switch (r) {
    case Regime::kIndividual:
      return s.n_bidders * extra;
    case Regime::kPublicNoInfo:
    case Regime::kPublicFullInfo:
      return extra;
    case Regime::kCommonFreeInfo:
      return extra + s.n_bidders * s.m_characteristics;
  }
  return 0;
}

std::optional<DisclosurePolicy> decode_candidate(const Scenario& s, Regime r, const InfoPlan& plan,
                                                 std::uint64_t code) {
  const int n = s.n_bidders, m = s.m_characteristics, extra = m - 1;
  auto bit = [&](int k) { return ((code >> k) & 1u) != 0; };
  DisclosurePolicy p;
  p.awareness.assign(static_cast<std::size_t>(n), AwarenessSet::of({1}));
  p.info.assign(static_cast<std::size_t>(n), std::vector<std::optional<InfoLevel>>(static_cast<std::size_t>(m)));
  if (r == Regime::kIndividual) {
    for (int i = 0; i < n; ++i) {
      AwarenessSet a = AwarenessSet::of({1});
      for (int j = 1; j < m; ++j) {
        if (bit(i * extra + j - 1)) a = a.with(j);
      }
      p.awareness[static_cast<std::size_t>(i)] = a;
      for (int j : a.ids()) p.info[static_cast<std::size_t>(i)][static_cast<std::size_t>(j - 1)] = planned(plan, i, j - 1);
    }
    return p;
  }
  AwarenessSet common = AwarenessSet::of({1});
  for (int j = 1; j < m; ++j) {
    if (bit(j - 1)) common = common.with(j);
  }
  for (int i = 0; i < n; ++i) {
    p.awareness[static_cast<std::size_t>(i)] = common;
    for (int j = 0; j < m; ++j) {
      auto& slot = p.info[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      const bool full_bit = r == Regime::kCommonFreeInfo && bit(extra + i * m + j);
      if (!common.contains(j)) {
        if (full_bit) return std::nullopt;
        continue;
      }
      switch (r) {
        case Regime::kPublicNoInfo:
          slot = j == 0 ? planned(plan, i, 0) : InfoLevel::none();
          break;
        case Regime::kPublicFullInfo:
          slot = j == 0 ? planned(plan, i, 0) : InfoLevel::full();
          break;
        default:
          slot = full_bit ? InfoLevel::full() : InfoLevel::none();
          break;
      }
    }
  }
  return p;
}

OptimizeResult optimize(const Scenario& s, Regime r, const OptimizeConfig& config) {
  validate(s);
  if (s.n_bidders < 2) throw DisclosureError("optimization needs at least two bidders");
  const int bits = search_bits(s, r);
  const bool exhaustive = bits <= config.exhaustive_bits;
  if (!exhaustive && !config.allow_greedy) {
    throw DisclosureError("search space of 2^" + std::to_string(bits) + " candidates exceeds the cap of 2^" +
                          std::to_string(config.exhaustive_bits) + " and greedy search is disabled");
  }
  if (bits >= 63) throw DisclosureError("candidate encoding too wide");

  OptimizeResult out;
  out.regime = r;
  out.exhaustive = exhaustive;
  std::map<std::uint64_t, Candidate> seen;
  std::optional<Candidate> best;

  auto evaluate = [&](std::uint64_t code) -> const Candidate* {
    if (auto it = seen.find(code); it != seen.end()) return &it->second;
    auto policy = decode_candidate(s, r, config.plan, code);
    if (!policy) return nullptr;
    Candidate c{code, validate(s, *policy), {}};
    c.revenue = estimate(s, c.policy, config.estimator).revenue_from_fees;
    out.trace.push_back({c.policy, c.revenue});
    const Candidate& stored = seen.emplace(code, std::move(c)).first->second;
    if (!best || better(stored, *best)) best = stored;
    return &stored;
  };

  if (exhaustive) {
    for (std::uint64_t code = 0; code < (std::uint64_t{1} << bits); ++code) evaluate(code);
  } else {
    // Greedy: from nobody aware, take the single addition that raises revenue
    // most; under free info an awareness bit may come with all its info bits.
    const int extra = s.m_characteristics - 1;
    std::uint64_t current = 0;
    const Candidate* here = evaluate(current);
    for (;;) {
      std::vector<std::uint64_t> moves;
      for (int k = 0; k < bits; ++k) {
        if (!((current >> k) & 1u)) moves.push_back(current | (std::uint64_t{1} << k));
      }
      if (r == Regime::kCommonFreeInfo) {
        for (int j = 1; j < s.m_characteristics; ++j) {
          if ((current >> (j - 1)) & 1u) continue;
          std::uint64_t mv = current | (std::uint64_t{1} << (j - 1));
          for (int i = 0; i < s.n_bidders; ++i) mv |= std::uint64_t{1} << (extra + i * s.m_characteristics + j);
          moves.push_back(mv);
        }
      }
      const Candidate* step = nullptr;
      for (std::uint64_t mv : moves) {
        const Candidate* c = evaluate(mv);
        if (c && compare(c->revenue, here->revenue) > 0 && (!step || better(*c, *step))) step = c;
      }
      if (!step) break;
      current = step->code;
      here = step;
    }
  }
  out.best = best->policy;
  out.report = revenue(s, out.best, config.estimator);
  return out;
}

Estimate difference(const Estimate& a, const Estimate& b) {
  Estimate out{a.value - b.value, std::hypot(a.std_error, b.std_error), std::nullopt};
  if (a.exact && b.exact) {
    out.exact = *a.exact - *b.exact;
    out.exact->canonicalize();
    out.value = out.exact->get_d();
  }
  return out;
}

Estimate sum(const Estimate& a, const Estimate& b) {
  Estimate out{a.value + b.value, std::hypot(a.std_error, b.std_error), std::nullopt};
  if (a.exact && b.exact) {
    out.exact = *a.exact + *b.exact;
    out.exact->canonicalize();
    out.value = out.exact->get_d();
  }
  return out;
}

int strict_sign(const Estimate& e, double z) {
  if (e.exact) return sgn(*e.exact);
  if (e.value > z * e.std_error) return 1;
  if (e.value < -z * e.std_error) return -1;
  return 0;
}

TradeoffBreakdown check_tradeoff(const Scenario& s, const DisclosurePolicy& base, int target, int ell,
                                 const EstimatorConfig& config, const InfoLevel& level) {
  const DisclosurePolicy before = validate(s, base);
  const int n = s.n_bidders;
  if (target < 0 || target >= n) throw DisclosureError("target bidder out of range");
  if (ell <= 0 || ell >= s.m_characteristics) {
    throw DisclosureError("characteristic must be a non-default characteristic of the scenario");
  }
  const AwarenessSet core = before.aware(0).without(ell);
  bool everyone = true;
  for (int i = 0; i < n; ++i) {
    if (before.aware(i).without(ell) != core) {
      throw DisclosureError("bidder " + std::to_string(i + 1) + " is aware of " + before.aware(i).to_string() +
                            "; every bidder must be aware of " + core.to_string() + " with or without " +
                            std::to_string(ell + 1));
    }
    everyone = everyone && before.aware(i).contains(ell);
  }
  TradeoffBreakdown out;
  if (everyone) {
    const Estimate r = estimate(s, before, config).revenue_from_fees;
    const bool exact = r.exact.has_value();
    const Estimate zero{0.0, 0.0, exact ? std::optional<Rational>(0) : std::nullopt};
    out = {zero, zero, zero, false, r, r};
    return out;
  }
  if (before.aware(target).contains(ell)) {
    throw DisclosureError("target bidder " + std::to_string(target + 1) + " is already aware of characteristic " +
                          std::to_string(ell + 1));
  }
  DisclosurePolicy after = before;
  after.awareness[static_cast<std::size_t>(target)] = before.aware(target).with(ell);
  after.info[static_cast<std::size_t>(target)][static_cast<std::size_t>(ell)] = level;
  after = validate(s, after);

  const EstimateBundle b0 = estimate(s, before, config);
  const EstimateBundle b1 = estimate(s, after, config);
  out.delta_first_order_stat = difference(b1.first, b0.first);
  bool exact = b0.first.exact.has_value();
  Estimate rents{0.0, 0.0, exact ? std::optional<Rational>(0) : std::nullopt};
  for (int i = 0; i < n; ++i) {
    if (i == target) continue;
    const auto k = static_cast<std::size_t>(i);
    rents = sum(rents, difference(b1.bidders[k].rent, b0.bidders[k].rent));
  }
  out.delta_rents_remaining_unaware = rents;
  const auto t = static_cast<std::size_t>(target);
  out.lost_rent_newly_aware = difference(b0.bidders[t].rent, b1.bidders[t].rent);
  const Estimate gain = sum(out.delta_first_order_stat, out.delta_rents_remaining_unaware);
  out.raise = compare(gain, out.lost_rent_newly_aware) > 0;
  out.revenue_before = b0.revenue_from_fees;
  out.revenue_after = b1.revenue_from_fees;
  return out;
}

}  // namespace awarebid
