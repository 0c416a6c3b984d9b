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

#include <algorithm>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <vector>

#include "awarebid/piecewise_poly.hpp"
#include "awarebid/scenario.hpp"
#include "awarebid/valuation_law.hpp"

namespace awarebid {

/// Law of bidder i's estimated valuation as seen from `view`: the sum over
/// characteristics in M^i and `view` of E[X | signal], built by convolution.
ValuationLaw valuation_law(const Scenario& s, const DisclosurePolicy& p, int bidder, const AwarenessSet& view);

/// Largest number of laws the subset enumeration accepts.
inline constexpr int kMaxOrderStatLaws = 12;

/// Scaling by a positive integer for each supported ring type.
inline double divide(double x, long d) { return x / static_cast<double>(d); }
inline Rational divide(const Rational& x, long d) {
  Rational q = x / Rational(d);
  q.canonicalize();
  return q;
}
inline PiecewisePoly divide(const PiecewisePoly& x, long d) {
  return make_rational(1, static_cast<unsigned long>(d)) * x;
}
inline double times(double x, long d) { return x * static_cast<double>(d); }
inline Rational times(const Rational& x, long d) { return x * Rational(d); }
inline PiecewisePoly times(const PiecewisePoly& x, long d) { return Rational(d) * x; }

/// CDF of the r-th highest of independent variables (r = 1 is the maximum),
/// given each variable's CDF value c[i] at one point. Works for any ring type
/// (double, Rational, PiecewisePoly). r = 1 and r = 2 use the closed product
/// forms; other ranks sum the permanents of the two-column-class matrices
/// [c ... c, 1-c ... 1-c], each enumerated by permutation class.
template <class T>
T order_cdf_product(const std::vector<T>& c) {
  T acc = c.at(0);
  for (std::size_t i = 1; i < c.size(); ++i) acc = acc * c[i];
  return acc;
}

template <class T>
T order_cdf_second(const std::vector<T>& c, const T& one) {
  T acc = order_cdf_product(c);
  for (std::size_t i = 0; i < c.size(); ++i) {
    T term = one - c[i];
    for (std::size_t k = 0; k < c.size(); ++k) {
      if (k != i) term = term * c[k];
    }
    acc = acc + term;
  }
  return acc;
}

/// Permanent of a square matrix whose columns come in two classes: the first
/// `k` columns equal `col_a`, the rest equal `col_b`. Permutations are
/// grouped by the set of rows sent to class-a columns; each group has
/// k! (n-k)! members with the same product.
template <class T>
T two_class_permanent(const std::vector<T>& col_a, const std::vector<T>& col_b, int k, const T& zero) {
  const int n = static_cast<int>(col_a.size());
  if (n > kMaxOrderStatLaws) throw std::invalid_argument("too many laws for permanent enumeration");
  T acc = zero;
  long multiplicity = 1;
  for (int f = 2; f <= k; ++f) multiplicity *= f;
  for (int f = 2; f <= n - k; ++f) multiplicity *= f;
  for (unsigned rows = 0; rows < (1u << n); ++rows) {
    if (__builtin_popcount(rows) != k) continue;
    std::optional<T> prod;
    for (int i = 0; i < n; ++i) {
      const T& v = (rows >> i) & 1u ? col_a[static_cast<std::size_t>(i)] : col_b[static_cast<std::size_t>(i)];
      prod = prod ? *prod * v : v;
    }
    acc = acc + *prod;
  }
  return times(acc, multiplicity);
}

template <class T>
T order_cdf_general(const std::vector<T>& c, int r, const T& zero, const T& one) {
  const int n = static_cast<int>(c.size());
  if (r < 1 || r > n) throw std::invalid_argument("rank outside 1..n");
  std::vector<T> complement;
  for (const auto& x : c) complement.push_back(one - x);
  T acc = zero;
  for (int k = n - r + 1; k <= n; ++k) {
    long denom = 1;
    for (int f = 2; f <= k; ++f) denom *= f;
    for (int f = 2; f <= n - k; ++f) denom *= f;
    const T per = two_class_permanent(c, complement, k, zero);
    acc = acc + divide(per, denom);
  }
  return acc;
}

template <class T>
T order_cdf_value(const std::vector<T>& c, int r, const T& zero, const T& one) {
  const int n = static_cast<int>(c.size());
  if (r < 1 || r > n) throw std::invalid_argument("rank outside 1..n");
  if (r == 1) return order_cdf_product(c);
  if (r == 2) return order_cdf_second(c, one);
  return order_cdf_general(c, r, zero, one);
}

/// Brute-force permanent over all n! permutations (reference for tests).
template <class T>
T brute_force_permanent(const std::vector<std::vector<T>>& a, const T& zero) {
  const std::size_t n = a.size();
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  T acc = zero;
  do {
    T prod = a[0][perm[0]];
    for (std::size_t i = 1; i < n; ++i) prod = prod * a[i][perm[i]];
    acc = acc + prod;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return acc;
}

/// CDF of the r-th highest of independent valuation laws.
class OrderStatLaw {
 public:
  OrderStatLaw(std::vector<ValuationLaw> laws, int rank);

  int rank() const { return rank_; }
  const std::vector<ValuationLaw>& laws() const { return laws_; }
  /// Exact piecewise CDF when every input law is exact.
  const std::optional<PiecewisePoly>& exact_cdf() const { return exact_; }

  double cdf(double x) const;
  double cdf_left(double x) const;

 private:
  std::vector<ValuationLaw> laws_;
  int rank_;
  std::optional<PiecewisePoly> exact_;
};

OrderStatLaw order_cdf(const std::vector<ValuationLaw>& laws, int rank);

struct Moment {
  double value = 0.0;
  std::optional<Rational> exact;
};

/// E of the order statistic: exact for exact laws, otherwise adaptive Simpson
/// (absolute tolerance `tol`) between consecutive breakpoints.
Moment expected_order_stat(const OrderStatLaw& law, double tol = 1e-10);
/// The quadrature route only, even when an exact CDF is available.
Moment expected_order_stat_quadrature(const OrderStatLaw& law, double tol = 1e-10);

/// E[max(A, B)] for independent normals (variances may be zero, not both).
double clark_normal_max(double mu_a, double var_a, double mu_b, double var_b);

/// E[max] of two iid N(mu, sigma^2): mu + sigma / sqrt(pi).
double iid_normal_max(double mu, double sigma);

/// E[max(X1 + X2, X1')] with X1, X1' ~ N(mu1, s1^2) and X2 ~ N(mu2, s2^2):
/// mu1 + mu2 Phi(mu2 / t) + t phi(mu2 / t), t = sqrt(2 s1^2 + s2^2).
double aware_normal_max(double mu1, double s1, double mu2, double s2);

}  // namespace awarebid
