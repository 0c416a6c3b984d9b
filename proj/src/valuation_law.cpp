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

#include "awarebid/valuation_law.hpp"

#include <algorithm>
#include <boost/math/distributions/normal.hpp>
#include <cmath>
#include <map>

#include "awarebid/kernels.hpp"

namespace awarebid {
namespace {

const boost::math::normal kStdNormal(0.0, 1.0);

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

AtomLaw merge_atoms(std::map<Rational, Rational> m) {
  AtomLaw out;
  for (auto& [v, p] : m) {
    Rational pv = p;
    pv.canonicalize();
    out.atoms.emplace_back(v, pv);
  }
  return out;
}

double grid_cdf(const GridLaw& g, double x) {
  if (x < g.lo) return 0.0;
  const double pos = (x - g.lo) / g.step;
  const std::size_t last = g.cdf.size() - 1;
  if (pos >= static_cast<double>(last)) return 1.0;
  const std::size_t k = static_cast<std::size_t>(pos);
  const double f = pos - static_cast<double>(k);
  return g.cdf[k] + f * (g.cdf[k + 1] - g.cdf[k]);
}

double mixture_cdf(const NormalMixtureLaw& m, double x) {
  double acc = 0;
  for (const auto& c : m.components) {
    if (c.var == 0) {
      acc += x >= c.mean ? c.weight : 0.0;
    } else {
      acc += c.weight * boost::math::cdf(kStdNormal, (x - c.mean) / std::sqrt(c.var));
    }
  }
  return std::min(1.0, std::max(0.0, acc));
}

// Smallest x with cdf(x) >= u, by bisection inside [lo, hi].
template <class F>
double bisect_quantile(const F& cdf, double u, double lo, double hi) {
  for (int it = 0; it < 200 && hi - lo > 1e-13 * std::max(1.0, std::abs(lo) + std::abs(hi)); ++it) {
    const double mid = 0.5 * (lo + hi);
    if (cdf(mid) >= u) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

ValuationLaw grid_convolve(const ValuationLaw& a, const ValuationLaw& b, std::size_t points) {
  if (points < 8) throw DistributionError("grid needs at least 8 nodes");
  const auto [la, ua] = a.range();
  const auto [lb, ub] = b.range();
  const std::size_t half = points / 2;
  const double h = std::max(ua - la, ub - lb) / static_cast<double>(half - 1);
  auto masses = [h](const ValuationLaw& law, double lo, double hi) {
    const std::size_t nbins = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil((hi - lo) / h)));
    std::vector<double> m(nbins);
    double prev = 0.0;
    for (std::size_t k = 0; k < nbins; ++k) {
      const double c = k + 1 == nbins ? 1.0 : law.cdf(lo + static_cast<double>(k + 1) * h);
      m[k] = c - prev;
      prev = c;
    }
    return m;
  };
  const std::vector<double> ma = masses(a, la, ua);
  const std::vector<double> mb = masses(b, lb, ub);
  std::vector<double> out(ma.size() + mb.size() - 1, 0.0);
  convolve_masses(detected_isa(), {ma.data(), ma.size(), mb.data(), mb.size(), out.data()});
  // Pair (k, l) sits at la + lb + (k + l + 1) h; spread each output mass over
  // a cell of width h centred there and tabulate the CDF at cell edges.
  GridLaw g;
  g.lo = la + lb + 0.5 * h;
  g.step = h;
  g.cdf.reserve(out.size() + 1);
  g.cdf.push_back(0.0);
  double acc = 0.0;
  for (double m : out) {
    acc += m;
    g.cdf.push_back(acc);
  }
  for (auto& c : g.cdf) c = std::min(1.0, std::max(0.0, c / acc));
  return ValuationLaw(std::move(g));
}

// F_{X+U}(y) = (A(y - lo) - A(y - hi)) / (hi - lo) with A the antiderivative of F_X.
ValuationLaw exact_plus_uniform(const PiecewisePoly& f, const Rational& lo, const Rational& hi) {
  const PiecewisePoly anti = f.antiderivative();
  Rational scale = 1 / (hi - lo);
  PiecewisePoly out = scale * (anti.shifted(lo) - anti.shifted(hi));
  return ValuationLaw(PiecewiseLaw{out.simplified(), std::nullopt});
}

}  // namespace

ValuationLaw ValuationLaw::point_mass(const Rational& v) {
  return ValuationLaw(AtomLaw{{{v, Rational(1)}}});
}

ValuationLaw ValuationLaw::of(const Distribution& d, const InfoLevel& level) {
  if (level.kind == InfoLevel::Kind::kNone) {
    if (auto m = awarebid::exact_mean(d)) return point_mass(*m);
    return point_mass(rational_from_double(awarebid::mean(d)));
  }
  if (d.is_normal()) {
    if (level.kind == InfoLevel::Kind::kPartition) {
      throw DistributionError("unsupported mixture on continuous partition");
    }
    const auto& n = d.as_normal();
    return ValuationLaw(NormalMixtureLaw{{{1.0, n.mean, n.stddev * n.stddev}}});
  }
  if (d.is_uniform() && level.kind == InfoLevel::Kind::kFull) {
    const auto& u = d.as_uniform();
    return ValuationLaw(PiecewiseLaw{PiecewisePoly::uniform_cdf(u.lo, u.hi), std::make_pair(u.lo, u.hi)});
  }
  std::map<Rational, Rational> m;
  for (const auto& c : exact_cells(d, level)) m[c.mean] += c.prob;
  return ValuationLaw(merge_atoms(std::move(m)));
}

double ValuationLaw::cdf(double x) const {
  return std::visit(overloaded{
                        [&](const AtomLaw& a) {
                          Rational acc = 0;
                          for (const auto& [v, p] : a.atoms) {
                            if (v.get_d() > x) break;
                            acc += p;
                          }
                          return acc.get_d();
                        },
                        [&](const PiecewiseLaw& p) { return p.cdf.eval(x); },
                        [&](const NormalMixtureLaw& m) { return mixture_cdf(m, x); },
                        [&](const GridLaw& g) { return grid_cdf(g, x); },
                    },
                    rep_);
}

double ValuationLaw::cdf_left(double x) const {
  return std::visit(overloaded{
                        [&](const AtomLaw& a) {
                          Rational acc = 0;
                          for (const auto& [v, p] : a.atoms) {
                            if (v.get_d() >= x) break;
                            acc += p;
                          }
                          return acc.get_d();
                        },
                        [&](const PiecewiseLaw& p) { return p.cdf.eval_left(x); },
                        [&](const NormalMixtureLaw& m) {
                          double acc = 0;
                          for (const auto& c : m.components) {
                            if (c.var == 0) {
                              acc += x > c.mean ? c.weight : 0.0;
                            } else {
                              acc += c.weight * boost::math::cdf(kStdNormal, (x - c.mean) / std::sqrt(c.var));
                            }
                          }
                          return acc;
                        },
                        [&](const GridLaw& g) { return grid_cdf(g, x); },
                    },
                    rep_);
}

std::optional<PiecewisePoly> ValuationLaw::exact_cdf() const {
  if (const auto* a = std::get_if<AtomLaw>(&rep_)) return PiecewisePoly::step_cdf(a->atoms);
  if (const auto* p = std::get_if<PiecewiseLaw>(&rep_)) return p->cdf;
  return std::nullopt;
}

std::vector<double> ValuationLaw::breakpoints() const {
  std::vector<double> out;
  std::visit(overloaded{
                 [&](const AtomLaw& a) {
                   for (const auto& [v, p] : a.atoms) out.push_back(v.get_d());
                 },
                 [&](const PiecewiseLaw& p) {
                   for (const auto& b : p.cdf.breaks()) out.push_back(b.get_d());
                 },
                 [&](const NormalMixtureLaw& m) {
                   for (const auto& c : m.components) {
                     if (c.var == 0) out.push_back(c.mean);
                   }
                 },
                 [&](const GridLaw& g) {
                   out.push_back(g.lo);
                   out.push_back(g.lo + g.step * static_cast<double>(g.cdf.size() - 1));
                 },
             },
             rep_);
  return out;
}

std::pair<double, double> ValuationLaw::range(double tail) const {
  return std::visit(
      overloaded{
          [&](const AtomLaw& a) {
            return std::make_pair(a.atoms.front().first.get_d(), a.atoms.back().first.get_d());
          },
          [&](const PiecewiseLaw& p) {
            return std::make_pair(p.cdf.breaks().front().get_d(), p.cdf.breaks().back().get_d());
          },
          [&](const NormalMixtureLaw& m) {
            const double z = -boost::math::quantile(kStdNormal, tail);
            double lo = INFINITY, hi = -INFINITY;
            for (const auto& c : m.components) {
              const double s = std::sqrt(c.var);
              lo = std::min(lo, c.mean - (z + 1) * s);
              hi = std::max(hi, c.mean + (z + 1) * s);
            }
            auto f = [&](double x) { return mixture_cdf(m, x); };
            return std::make_pair(bisect_quantile(f, tail, lo, hi), bisect_quantile(f, 1 - tail, lo, hi));
          },
          [&](const GridLaw& g) {
            return std::make_pair(g.lo, g.lo + g.step * static_cast<double>(g.cdf.size() - 1));
          },
      },
      rep_);
}

std::optional<Rational> ValuationLaw::exact_mean() const {
  if (const auto* a = std::get_if<AtomLaw>(&rep_)) {
    Rational m = 0;
    for (const auto& [v, p] : a->atoms) m += v * p;
    m.canonicalize();
    return m;
  }
  if (const auto* p = std::get_if<PiecewiseLaw>(&rep_)) {
    const auto& b = p->cdf.breaks();
    Rational m = b.back() - p->cdf.integral(b.front(), b.back());
    m.canonicalize();
    return m;
  }
  return std::nullopt;
}

double ValuationLaw::mean() const {
  if (auto m = exact_mean()) return m->get_d();
  if (const auto* m = std::get_if<NormalMixtureLaw>(&rep_)) {
    double acc = 0;
    for (const auto& c : m->components) acc += c.weight * c.mean;
    return acc;
  }
  const auto& g = std::get<GridLaw>(rep_);
  // Piecewise-linear CDF: E = hi - integral of the CDF over [lo, hi].
  double area = 0;
  for (std::size_t k = 0; k + 1 < g.cdf.size(); ++k) area += 0.5 * (g.cdf[k] + g.cdf[k + 1]) * g.step;
  return g.lo + g.step * static_cast<double>(g.cdf.size() - 1) - area;
}

ValuationLaw convolve(const ValuationLaw& a, const ValuationLaw& b, std::size_t grid_points) {
  const auto* aa = std::get_if<AtomLaw>(&a.rep());
  const auto* ba = std::get_if<AtomLaw>(&b.rep());
  const auto* ap = std::get_if<PiecewiseLaw>(&a.rep());
  const auto* bp = std::get_if<PiecewiseLaw>(&b.rep());
  const auto* an = std::get_if<NormalMixtureLaw>(&a.rep());
  const auto* bn = std::get_if<NormalMixtureLaw>(&b.rep());

  if (aa && ba) {
    std::map<Rational, Rational> m;
    for (const auto& [va, pa] : aa->atoms) {
      for (const auto& [vb, pb] : ba->atoms) m[va + vb] += pa * pb;
    }
    return ValuationLaw(merge_atoms(std::move(m)));
  }
  // Any exact law plus a plain uniform.
  if (bp && bp->uniform && (aa || ap)) {
    return exact_plus_uniform(*a.exact_cdf(), bp->uniform->first, bp->uniform->second);
  }
  if (ap && ap->uniform && (ba || bp)) {
    return exact_plus_uniform(*b.exact_cdf(), ap->uniform->first, ap->uniform->second);
  }
  if ((aa && bp) || (ap && ba)) {
    const AtomLaw& atoms = aa ? *aa : *ba;
    const PiecewisePoly& f = aa ? bp->cdf : ap->cdf;
    PiecewisePoly acc = PiecewisePoly::constant(0);
    for (const auto& [v, p] : atoms.atoms) acc = acc + p * f.shifted(v);
    return ValuationLaw(PiecewiseLaw{acc.simplified(), std::nullopt});
  }
  if ((an || aa) && (bn || ba) && (an || bn)) {
    auto components = [](const ValuationLaw& law) {
      if (const auto* m = std::get_if<NormalMixtureLaw>(&law.rep())) return m->components;
      std::vector<NormalComponent> out;
      for (const auto& [v, p] : std::get<AtomLaw>(law.rep()).atoms) out.push_back({p.get_d(), v.get_d(), 0.0});
      return out;
    };
    NormalMixtureLaw out;
    for (const auto& x : components(a)) {
      for (const auto& y : components(b)) out.components.push_back({x.weight * y.weight, x.mean + y.mean, x.var + y.var});
    }
    return ValuationLaw(std::move(out));
  }
  return grid_convolve(a, b, grid_points);
}

ValuationLaw convolve(const Distribution& a, const Distribution& b, std::size_t grid_points) {
  return convolve(ValuationLaw::of(a, InfoLevel::full()), ValuationLaw::of(b, InfoLevel::full()), grid_points);
}

}  // namespace awarebid
