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

#include "awarebid/engine.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numeric>
#include <thread>

namespace awarebid {
namespace {

constexpr std::size_t kBlock = 4096;

// Sampler plus signal-to-estimate map for one (bidder, characteristic) pair.
struct CompiledSlot {
  const Distribution* dist = nullptr;
  std::vector<double> cum;     // discrete: prefix probabilities
  std::vector<double> values;  // discrete: support
  bool aware = false;
  InfoLevel::Kind info = InfoLevel::Kind::kNone;
  double mean = 0.0;
  std::vector<double> atom_estimate;  // discrete: E[X | cell of atom k]
  std::vector<double> cuts;           // continuous partition
  std::vector<double> cell_means;

  double sample(double u, int& atom) const {
    if (dist->is_discrete()) {
      std::size_t k = 0;
      while (k + 1 < values.size() && u > cum[k]) ++k;
      atom = static_cast<int>(k);
      return values[k];
    }
    atom = -1;
    return quantile(*dist, u);
  }

  double estimate(double x, int atom) const {
    switch (info) {
      case InfoLevel::Kind::kNone:
        return mean;
      case InfoLevel::Kind::kFull:
        return x;
      case InfoLevel::Kind::kPartition:
        break;
    }
    if (atom >= 0) return atom_estimate[static_cast<std::size_t>(atom)];
    std::size_t k = 0;
    while (k < cuts.size() && x >= cuts[k]) ++k;
    return cell_means[k];
  }
};

std::vector<std::vector<CompiledSlot>> compile(const Scenario& s, const DisclosurePolicy& p) {
  std::vector<std::vector<CompiledSlot>> out(static_cast<std::size_t>(s.n_bidders));
  for (int i = 0; i < s.n_bidders; ++i) {
    for (int j = 0; j < s.m_characteristics; ++j) {
      CompiledSlot c;
      const Distribution& d = s.law(i, j);
      c.dist = &d;
      c.mean = mean(d);
      if (d.is_discrete()) {
        Rational acc = 0;
        for (const auto& a : d.as_discrete().atoms) {
          acc += a.prob;
          c.cum.push_back(acc.get_d());
          c.values.push_back(a.value.get_d());
        }
      }
      c.aware = p.aware(i).contains(j);
      if (c.aware) {
        const InfoLevel& level = p.level(i, j);
        c.info = level.kind;
        if (level.kind == InfoLevel::Kind::kPartition) {
          if (d.is_discrete()) {
            for (double v : c.values) c.atom_estimate.push_back(conditional_mean(d, level, cell_of(d, level, v)));
          } else {
            for (const auto& q : level.cutpoints) c.cuts.push_back(q.get_d());
            for (std::size_t k = 0; k <= c.cuts.size(); ++k) {
              c.cell_means.push_back(conditional_mean(d, level, SignalCell{static_cast<int>(k), 0.0}));
            }
          }
        }
      }
      out[static_cast<std::size_t>(i)].push_back(std::move(c));
    }
  }
  return out;
}

struct Welford {
  double n = 0, mean = 0, m2 = 0;
  void add(double x) {
    n += 1;
    const double d = x - mean;
    mean += d / n;
    m2 += d * (x - mean);
  }
  void merge(const Welford& o) {
    if (o.n == 0) return;
    if (n == 0) {
      *this = o;
      return;
    }
    const double total = n + o.n;
    const double d = o.mean - mean;
    mean += d * o.n / total;
    m2 += o.m2 + d * d * n * o.n / total;
    n = total;
  }
};

// Layout of per-draw quantities.
enum : std::size_t { kFirst, kSecond, kFees, kRents, kResidual, kPerBidderBase };
enum : std::size_t { kPerceived, kActual, kRent, kPerceivedWin, kActualWin, kHidden, kPerBidder };

struct ViewPlan {
  std::vector<AwarenessSet> views;  // distinct perspectives; the last is the full set
  std::vector<std::size_t> own;     // own[i]: index of bidder i's perspective
  std::size_t full = 0;
};

ViewPlan plan_views(const Scenario& s, const DisclosurePolicy& p) {
  ViewPlan plan;
  const AwarenessSet all = full_set(s);
  auto index_of = [&](const AwarenessSet& v) {
    for (std::size_t k = 0; k < plan.views.size(); ++k) {
      if (plan.views[k] == v) return k;
    }
    plan.views.push_back(v);
    return plan.views.size() - 1;
  };
  for (int i = 0; i < s.n_bidders; ++i) plan.own.push_back(index_of(p.aware(i)));
  plan.full = index_of(all);
  return plan;
}

std::vector<Welford> run_block(const Scenario& s, const DisclosurePolicy& p,
                               const std::vector<std::vector<CompiledSlot>>& slots, const ViewPlan& plan,
                               const EstimatorConfig& cfg, std::uint64_t begin, std::size_t count) {
  const int n = s.n_bidders;
  const int m = s.m_characteristics;
  const std::size_t nq = kPerBidderBase + kPerBidder * static_cast<std::size_t>(n);
  // est[i][j][d], and the raw value for hidden characteristics.
  std::vector<double> est(static_cast<std::size_t>(n * m) * count);
  std::vector<double> hidden(static_cast<std::size_t>(n) * count, 0.0);
  for (std::size_t d = 0; d < count; ++d) {
    const RandomStream stream(cfg.seed, begin + d);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < m; ++j) {
        const CompiledSlot& c = slots[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        int atom = -1;
        const double x = c.sample(stream.uniform(static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j)), atom);
        if (c.aware) {
          est[(static_cast<std::size_t>(i * m + j)) * count + d] = c.estimate(x, atom);
        } else {
          hidden[static_cast<std::size_t>(i) * count + d] += x;
        }
      }
    }
  }
  const std::size_t nv = plan.views.size();
  std::vector<double> bid(nv * static_cast<std::size_t>(n) * count, 0.0);
  std::vector<double> first(nv * count), second(nv * count);
  std::vector<double> share(nv * static_cast<std::size_t>(n) * count), surplus(nv * static_cast<std::size_t>(n) * count);
  for (std::size_t v = 0; v < nv; ++v) {
    std::vector<const double*> bp(static_cast<std::size_t>(n));
    std::vector<double*> sp(static_cast<std::size_t>(n)), up(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
      double* row = bid.data() + (v * static_cast<std::size_t>(n) + static_cast<std::size_t>(k)) * count;
      const AwarenessSet seen = p.aware(k) & plan.views[v];
      for (int j = 0; j < m; ++j) {
        if (!seen.contains(j)) continue;
        const double* e = est.data() + static_cast<std::size_t>(k * m + j) * count;
        for (std::size_t d = 0; d < count; ++d) row[d] += e[d];
      }
      bp[static_cast<std::size_t>(k)] = row;
      sp[static_cast<std::size_t>(k)] = share.data() + (v * static_cast<std::size_t>(n) + static_cast<std::size_t>(k)) * count;
      up[static_cast<std::size_t>(k)] = surplus.data() + (v * static_cast<std::size_t>(n) + static_cast<std::size_t>(k)) * count;
    }
    settle_block(cfg.isa, {n, count, bp.data(), first.data() + v * count, second.data() + v * count, sp.data(), up.data()});
  }
  auto at = [&](const std::vector<double>& a, std::size_t v, int k, std::size_t d) {
    return a[(v * static_cast<std::size_t>(n) + static_cast<std::size_t>(k)) * count + d];
  };
  std::vector<Welford> stats(nq);
  const std::size_t full = plan.full;
  for (std::size_t d = 0; d < count; ++d) {
    const double f = first[full * count + d];
    const double sec = second[full * count + d];
    double fees = sec, rents = f;
    for (int i = 0; i < n; ++i) {
      const std::size_t own = plan.own[static_cast<std::size_t>(i)];
      const double perceived = at(surplus, own, i, d);
      const double actual = at(surplus, full, i, d);
      const double win = at(share, full, i, d);
      const std::size_t base = kPerBidderBase + kPerBidder * static_cast<std::size_t>(i);
      stats[base + kPerceived].add(perceived);
      stats[base + kActual].add(actual);
      stats[base + kRent].add(perceived - actual);
      stats[base + kPerceivedWin].add(at(share, own, i, d));
      stats[base + kActualWin].add(win);
      stats[base + kHidden].add(hidden[static_cast<std::size_t>(i) * count + d] * win);
      fees += perceived;
      rents += perceived - actual;
    }
    stats[kFirst].add(f);
    stats[kSecond].add(sec);
    stats[kFees].add(fees);
    stats[kRents].add(rents);
    stats[kResidual].add(fees - rents);
  }
  return stats;
}

EstimateBundle estimate_monte_carlo(const Scenario& s, const DisclosurePolicy& p, const EstimatorConfig& cfg) {
  if (cfg.n_samples == 0) throw EngineError("Monte Carlo needs at least one sample");
  const auto slots = compile(s, p);
  const ViewPlan plan = plan_views(s, p);
  const std::uint64_t blocks = (cfg.n_samples + kBlock - 1) / kBlock;
  std::vector<std::vector<Welford>> results(blocks);
  auto work = [&](std::uint64_t b) {
    const std::uint64_t begin = b * kBlock;
    const std::size_t count = static_cast<std::size_t>(std::min<std::uint64_t>(kBlock, cfg.n_samples - begin));
    results[b] = run_block(s, p, slots, plan, cfg, begin, count);
  };
  const int workers = std::max(1, std::min<int>(cfg.workers, static_cast<int>(blocks)));
  if (workers == 1) {
    for (std::uint64_t b = 0; b < blocks; ++b) work(b);
  } else {
    std::atomic<std::uint64_t> next{0};
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::uint64_t b = next++; b < blocks; b = next++) work(b);
      });
    }
    for (auto& t : pool) t.join();
  }
  // Merge in block order so the result is independent of scheduling.
  std::vector<Welford> total(results[0].size());
  for (const auto& r : results) {
    for (std::size_t q = 0; q < total.size(); ++q) total[q].merge(r[q]);
  }
  auto est = [&](std::size_t q) {
    Estimate e;
    e.value = total[q].mean;
    if (cfg.report_standard_errors && total[q].n > 1) {
      e.std_error = std::sqrt(total[q].m2 / (total[q].n - 1) / total[q].n);
    }
    return e;
  };
  EstimateBundle out;
  out.backend = Backend::kMonteCarlo;
  out.samples = cfg.n_samples;
  out.first = est(kFirst);
  out.second = est(kSecond);
  out.revenue_from_fees = est(kFees);
  out.revenue_from_rents = est(kRents);
  out.residual = est(kResidual);
  out.has_hidden = true;
  for (int i = 0; i < s.n_bidders; ++i) {
    const std::size_t base = kPerBidderBase + kPerBidder * static_cast<std::size_t>(i);
    out.bidders.push_back({est(base + kPerceived), est(base + kActual), est(base + kRent),
                           est(base + kPerceivedWin), est(base + kActualWin), est(base + kHidden)});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Exact sweep over information cells with integer-scaled values.

struct ExactSlot {
  int bidder;
  int characteristic;
  bool hidden;
  std::vector<long> value;        // scaled by the common value denominator
  std::vector<mpz_class> weight;  // scaled by this slot's probability denominator
};

mpz_class lcm_of(const std::vector<mpz_class>& xs) {
  mpz_class acc = 1;
  for (const auto& x : xs) mpz_lcm(acc.get_mpz_t(), acc.get_mpz_t(), x.get_mpz_t());
  return acc;
}

void addmul(mpz_class& acc, const mpz_class& w, long v) {
  if (v >= 0) {
    mpz_addmul_ui(acc.get_mpz_t(), w.get_mpz_t(), static_cast<unsigned long>(v));
  } else {
    mpz_submul_ui(acc.get_mpz_t(), w.get_mpz_t(), static_cast<unsigned long>(-v));
  }
}

EstimateBundle estimate_exact(const Scenario& s, const DisclosurePolicy& p, const EstimatorConfig& cfg) {
  const auto size = exact_cap_check(s, p, cfg.include_hidden);
  if (!size) throw EngineError("exact backend needs discrete laws for every characteristic in scope");
  if (*size > cfg.enumeration_cap) {
    throw EngineError("enumeration size " + std::to_string(*size) + " exceeds the cap of " +
                      std::to_string(cfg.enumeration_cap));
  }
  const int n = s.n_bidders;
  const int m = s.m_characteristics;

  struct RawSlot {
    int i, j;
    bool hidden;
    std::vector<ExactCell> cells;
  };
  std::vector<RawSlot> raw;
  std::vector<mpz_class> value_dens;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < m; ++j) {
      const bool aware = p.aware(i).contains(j);
      if (!aware && !cfg.include_hidden) continue;
      RawSlot r{i, j, !aware, exact_cells(s.law(i, j), aware ? p.level(i, j) : InfoLevel::full())};
      for (const auto& c : r.cells) value_dens.push_back(c.mean.get_den());
      raw.push_back(std::move(r));
    }
  }
  const mpz_class vscale = lcm_of(value_dens);
  std::vector<ExactSlot> slots;
  mpz_class total_weight = 1;
  const long limit = long{1} << 58;
  for (const auto& r : raw) {
    std::vector<mpz_class> dens;
    for (const auto& c : r.cells) dens.push_back(c.prob.get_den());
    const mpz_class pscale = lcm_of(dens);
    ExactSlot e{r.i, r.j, r.hidden, {}, {}};
    for (const auto& c : r.cells) {
      mpz_class v = c.mean.get_num() * (vscale / c.mean.get_den());
      if (!v.fits_slong_p() || v.get_si() > limit / m || v.get_si() < -limit / m) {
        throw EngineError("values too large for the exact backend");
      }
      e.value.push_back(v.get_si());
      e.weight.push_back(c.prob.get_num() * (pscale / c.prob.get_den()));
    }
    total_weight *= pscale;
    slots.push_back(std::move(e));
  }

  const ViewPlan plan = plan_views(s, p);
  const std::size_t nv = plan.views.size();
  long share_scale = 1;
  for (long k = 2; k <= n; ++k) share_scale = std::lcm(share_scale, k);

  std::vector<mpz_class> acc(kPerBidderBase + kPerBidder * static_cast<std::size_t>(n), mpz_class(0));
  std::vector<long> est(static_cast<std::size_t>(n * m), 0);
  std::vector<long> hid(static_cast<std::size_t>(n), 0);
  std::vector<std::size_t> idx(slots.size(), 0);
  std::vector<mpz_class> prefix(slots.size() + 1, mpz_class(1));
  std::vector<long> b(nv * static_cast<std::size_t>(n));
  std::vector<long> first(nv), second(nv), ties(nv);

  auto load = [&](std::size_t k) {
    const ExactSlot& sl = slots[k];
    if (!sl.hidden) est[static_cast<std::size_t>(sl.bidder * m + sl.characteristic)] = sl.value[idx[k]];
    prefix[k + 1] = prefix[k] * sl.weight[idx[k]];
  };
  for (std::size_t k = 0; k < slots.size(); ++k) load(k);

  std::uint64_t outcomes = 0;
  while (true) {
    ++outcomes;
    const mpz_class& w = prefix[slots.size()];
    std::fill(hid.begin(), hid.end(), 0);
    for (std::size_t k = 0; k < slots.size(); ++k) {
      if (slots[k].hidden) hid[static_cast<std::size_t>(slots[k].bidder)] += slots[k].value[idx[k]];
    }
    for (std::size_t v = 0; v < nv; ++v) {
      long top = std::numeric_limits<long>::min();
      for (int k = 0; k < n; ++k) {
        const AwarenessSet seen = p.aware(k) & plan.views[v];
        long sum = 0;
        for (int j = 0; j < m; ++j) {
          if (seen.contains(j)) sum += est[static_cast<std::size_t>(k * m + j)];
        }
        b[v * static_cast<std::size_t>(n) + static_cast<std::size_t>(k)] = sum;
        top = std::max(top, sum);
      }
      long t = 0, sec = std::numeric_limits<long>::min();
      for (int k = 0; k < n; ++k) {
        const long x = b[v * static_cast<std::size_t>(n) + static_cast<std::size_t>(k)];
        if (x == top) {
          ++t;
        } else {
          sec = std::max(sec, x);
        }
      }
      if (t >= 2) sec = top;
      first[v] = top;
      second[v] = sec;
      ties[v] = t;
    }
    auto bid_of = [&](std::size_t v, int k) { return b[v * static_cast<std::size_t>(n) + static_cast<std::size_t>(k)]; };
    const std::size_t full = plan.full;
    addmul(acc[kFirst], w, first[full]);
    addmul(acc[kSecond], w, second[full]);
    for (int i = 0; i < n; ++i) {
      const std::size_t own = plan.own[static_cast<std::size_t>(i)];
      const std::size_t base = kPerBidderBase + kPerBidder * static_cast<std::size_t>(i);
      if (bid_of(own, i) == first[own]) {
        addmul(acc[base + kPerceived], w, first[own] - second[own]);
        addmul(acc[base + kPerceivedWin], w, share_scale / ties[own]);
      }
      if (bid_of(full, i) == first[full]) {
        addmul(acc[base + kActual], w, first[full] - second[full]);
        addmul(acc[base + kActualWin], w, share_scale / ties[full]);
        if (hid[static_cast<std::size_t>(i)] != 0) {
          addmul(acc[base + kHidden], w * (share_scale / ties[full]), hid[static_cast<std::size_t>(i)]);
        }
      }
    }
    // Advance the odometer, last slot fastest.
    std::size_t k = slots.size();
    bool done = true;
    while (k > 0) {
      --k;
      if (++idx[k] < slots[k].value.size()) {
        done = false;
        break;
      }
      idx[k] = 0;
    }
    if (done) break;
    for (std::size_t r = k; r < slots.size(); ++r) load(r);
  }

  const mpz_class denom_value = total_weight * vscale;
  auto finish = [](const mpz_class& num, const mpz_class& den) {
    Estimate e;
    Rational q(num, den);
    q.canonicalize();
    e.value = q.get_d();
    e.exact = q;
    return e;
  };
  EstimateBundle out;
  out.backend = Backend::kExact;
  out.samples = outcomes;
  out.first = finish(acc[kFirst], denom_value);
  out.second = finish(acc[kSecond], denom_value);
  Rational fees = *out.second.exact;
  Rational rents = *out.first.exact;
  out.has_hidden = cfg.include_hidden;
  for (int i = 0; i < n; ++i) {
    const std::size_t base = kPerBidderBase + kPerBidder * static_cast<std::size_t>(i);
    BidderEstimates be;
    be.perceived_surplus = finish(acc[base + kPerceived], denom_value);
    be.actual_surplus = finish(acc[base + kActual], denom_value);
    Rational rent = *be.perceived_surplus.exact - *be.actual_surplus.exact;
    rent.canonicalize();
    be.rent = {rent.get_d(), 0.0, rent};
    be.perceived_win = finish(acc[base + kPerceivedWin], total_weight * share_scale);
    be.actual_win = finish(acc[base + kActualWin], total_weight * share_scale);
    be.hidden_gain = finish(acc[base + kHidden], denom_value * share_scale);
    fees += *be.perceived_surplus.exact;
    rents += rent;
    out.bidders.push_back(std::move(be));
  }
  fees.canonicalize();
  rents.canonicalize();
  Rational residual = fees - rents;
  residual.canonicalize();
  out.revenue_from_fees = {fees.get_d(), 0.0, fees};
  out.revenue_from_rents = {rents.get_d(), 0.0, rents};
  out.residual = {residual.get_d(), 0.0, residual};
  return out;
}

}  // namespace

std::string_view backend_name(Backend b) { return b == Backend::kExact ? "exact" : "mc"; }

Draw draw_state(const Scenario& s, std::uint64_t seed, std::uint64_t draw_index) {
  const RandomStream stream(seed, draw_index);
  Draw d(static_cast<std::size_t>(s.n_bidders));
  for (int i = 0; i < s.n_bidders; ++i) {
    for (int j = 0; j < s.m_characteristics; ++j) {
      d[static_cast<std::size_t>(i)].push_back(
          sample(s.law(i, j), stream.uniform(static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j))));
    }
  }
  return d;
}

BidProfile bids(const Scenario& s, const DisclosurePolicy& p, const Draw& d, const AwarenessSet& view) {
  const DisclosurePolicy seen = perceive(p, view);
  BidProfile out{{}, view};
  for (int k = 0; k < s.n_bidders; ++k) {
    double b = 0;
    for (int j = 0; j < s.m_characteristics; ++j) {
      if (!seen.aware(k).contains(j)) continue;
      const Distribution& law = s.law(k, j);
      const InfoLevel& level = seen.level(k, j);
      const double x = d[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)];
      b += conditional_mean(law, level, cell_of(law, level, x));
    }
    out.bids.push_back(b);
  }
  return out;
}

AuctionOutcome settle(const BidProfile& b, const RandomStream& tie_stream) {
  if (b.bids.size() < 2) throw EngineError("second-price settlement needs at least 2 bidders");
  const double top = *std::max_element(b.bids.begin(), b.bids.end());
  AuctionOutcome out;
  for (std::size_t k = 0; k < b.bids.size(); ++k) {
    if (b.bids[k] == top) out.tie_set.push_back(static_cast<int>(k));
  }
  const double u = tie_stream.uniform(RandomStream::kTieLane, 0);
  const std::size_t pick = std::min(out.tie_set.size() - 1, static_cast<std::size_t>(u * static_cast<double>(out.tie_set.size())));
  out.winner = out.tie_set[pick];
  double price = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < b.bids.size(); ++k) {
    if (static_cast<int>(k) != out.winner) price = std::max(price, b.bids[k]);
  }
  out.price = price;
  return out;
}

std::optional<std::uint64_t> exact_cap_check(const Scenario& s, const DisclosurePolicy& p, bool include_hidden) {
  std::uint64_t total = 1;
  for (int i = 0; i < s.n_bidders; ++i) {
    for (int j = 0; j < s.m_characteristics; ++j) {
      if (!p.aware(i).contains(j) && !include_hidden) continue;
      const auto size = s.law(i, j).support_size();
      if (!size) return std::nullopt;
      if (total > std::numeric_limits<std::uint64_t>::max() / *size) {
        total = std::numeric_limits<std::uint64_t>::max();
      } else {
        total *= *size;
      }
    }
  }
  return total;
}

EstimateBundle estimate(const Scenario& s, const DisclosurePolicy& p, const EstimatorConfig& config) {
  if (s.n_bidders < 2) throw EngineError("second-price auction needs at least 2 bidders");
  const DisclosurePolicy valid = validate(s, p);
  if (config.backend == Backend::kExact) return estimate_exact(s, valid, config);
  return estimate_monte_carlo(s, valid, config);
}

}  // namespace awarebid
