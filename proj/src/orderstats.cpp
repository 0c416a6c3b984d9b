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

#include "awarebid/orderstats.hpp"

#include <boost/math/constants/constants.hpp>
#include <boost/math/distributions/normal.hpp>
#include <cmath>

namespace awarebid {
namespace {

const boost::math::normal kStdNormal(0.0, 1.0);

struct SimpsonState {
  const OrderStatLaw* law;
  int evaluations = 0;
};

double simpson(double fa, double fm, double fb, double h) { return h / 6.0 * (fa + 4.0 * fm + fb); }

// Adaptive Simpson on [a, b] where the endpoint values are supplied so the
// caller can pass one-sided limits at discontinuities.
double adaptive(SimpsonState& st, double a, double b, double fa, double fm, double fb, double whole, double tol,
                int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = st.law->cdf(lm), frm = st.law->cdf(rm);
  st.evaluations += 2;
  const double left = simpson(fa, flm, fm, m - a);
  const double right = simpson(fm, frm, fb, b - m);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  return adaptive(st, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         adaptive(st, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace

ValuationLaw valuation_law(const Scenario& s, const DisclosurePolicy& p, int bidder, const AwarenessSet& view) {
  const DisclosurePolicy seen = perceive(validate(s, p), view);
  std::optional<ValuationLaw> acc;
  for (int j = 0; j < s.m_characteristics; ++j) {
    if (!seen.aware(bidder).contains(j)) continue;
    ValuationLaw part = ValuationLaw::of(s.law(bidder, j), seen.level(bidder, j));
    acc = acc ? convolve(*acc, part) : part;
  }
  return acc ? *acc : ValuationLaw::point_mass(0);
}

OrderStatLaw::OrderStatLaw(std::vector<ValuationLaw> laws, int rank) : laws_(std::move(laws)), rank_(rank) {
  if (laws_.empty()) throw std::invalid_argument("order statistic needs at least one law");
  if (rank_ < 1 || rank_ > static_cast<int>(laws_.size())) throw std::invalid_argument("rank outside 1..n");
  if (laws_.size() > static_cast<std::size_t>(kMaxOrderStatLaws)) {
    throw std::invalid_argument("too many laws for order statistics");
  }
  bool all_exact = true;
  for (const auto& l : laws_) all_exact = all_exact && l.is_exact();
  if (all_exact) {
    std::vector<PiecewisePoly> c;
    for (const auto& l : laws_) c.push_back(*l.exact_cdf());
    exact_ = order_cdf_value(c, rank_, PiecewisePoly::constant(0), PiecewisePoly::constant(1)).simplified();
  }
}

double OrderStatLaw::cdf(double x) const {
  if (exact_) return exact_->eval(x);
  std::vector<double> c;
  for (const auto& l : laws_) c.push_back(l.cdf(x));
  return order_cdf_value(c, rank_, 0.0, 1.0);
}

double OrderStatLaw::cdf_left(double x) const {
  if (exact_) return exact_->eval_left(x);
  std::vector<double> c;
  for (const auto& l : laws_) c.push_back(l.cdf_left(x));
  return order_cdf_value(c, rank_, 0.0, 1.0);
}

OrderStatLaw order_cdf(const std::vector<ValuationLaw>& laws, int rank) { return OrderStatLaw(laws, rank); }

Moment expected_order_stat(const OrderStatLaw& law, double tol) {
  if (const auto& g = law.exact_cdf()) {
    Moment out;
    if (g->breaks().empty()) {
      // A constant CDF can only come from a point mass at 0 that simplified away.
      out.exact = Rational(0);
    } else {
      const Rational lo = g->breaks().front(), hi = g->breaks().back();
      Rational e = hi - g->integral(lo, hi);
      e.canonicalize();
      out.exact = e;
    }
    out.value = out.exact->get_d();
    return out;
  }
  return expected_order_stat_quadrature(law, tol);
}

Moment expected_order_stat_quadrature(const OrderStatLaw& law, double tol) {
  double lo = INFINITY, hi = -INFINITY;
  std::vector<double> cuts;
  for (const auto& l : law.laws()) {
    const auto [a, b] = l.range(1e-16);
    lo = std::min(lo, a);
    hi = std::max(hi, b);
    for (double x : l.breakpoints()) cuts.push_back(x);
  }
  cuts.push_back(lo);
  cuts.push_back(hi);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  cuts.erase(std::remove_if(cuts.begin(), cuts.end(), [&](double x) { return x < lo || x > hi; }), cuts.end());
  // E = hi - integral of G over [lo, hi]; the mass outside is below 1e-16.
  SimpsonState st{&law};
  double area = 0;
  const double seg_tol = tol / static_cast<double>(std::max<std::size_t>(1, cuts.size() - 1));
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
    const double a = cuts[k], b = cuts[k + 1];
    const double fa = law.cdf(a);       // right limit at the left end
    const double fb = law.cdf_left(b);  // left limit at the right end
    const double fm = law.cdf(0.5 * (a + b));
    area += adaptive(st, a, b, fa, fm, fb, simpson(fa, fm, fb, b - a), seg_tol, 50);
  }
  return {hi - area, std::nullopt};
}

double clark_normal_max(double mu_a, double var_a, double mu_b, double var_b) {
  if (var_a < 0 || var_b < 0) throw std::invalid_argument("variances must be non-negative");
  const double s = std::sqrt(var_a + var_b);
  if (s == 0) return std::max(mu_a, mu_b);
  const double theta = (mu_a - mu_b) / s;
  return mu_a * boost::math::cdf(kStdNormal, theta) + mu_b * boost::math::cdf(kStdNormal, -theta) +
         s * boost::math::pdf(kStdNormal, theta);
}

double iid_normal_max(double mu, double sigma) {
  return mu + sigma / std::sqrt(boost::math::constants::pi<double>());
}

double aware_normal_max(double mu1, double s1, double mu2, double s2) {
  const double t = std::sqrt(2 * s1 * s1 + s2 * s2);
  const double z = mu2 / t;
  return mu1 + mu2 * boost::math::cdf(kStdNormal, z) + t * boost::math::pdf(kStdNormal, z);
}

}  // namespace awarebid
