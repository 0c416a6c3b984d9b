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

#include <vector>

#include "awarebid/rational.hpp"

namespace awarebid {

/// Dense polynomial with exact coefficients, c[k] multiplying t^k.
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<Rational> c);
  static Poly constant(const Rational& v) { return Poly({v}); }

  const std::vector<Rational>& coeffs() const { return c_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }

  Rational operator()(const Rational& t) const;
  /// p(t + delta) as a polynomial in t.
  Poly taylor_shift(const Rational& delta) const;
  /// Antiderivative vanishing at t = 0.
  Poly integral() const;

  friend Poly operator+(const Poly& a, const Poly& b);
  friend Poly operator-(const Poly& a, const Poly& b);
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(const Rational& s, const Poly& a);
  friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }

 private:
  void trim();
  std::vector<Rational> c_;
};

/// Exact piecewise polynomial on the real line, right-continuous at its
/// breakpoints. With breakpoints b_0 < ... < b_K, piece 0 covers (-inf, b_0),
/// piece k covers [b_{k-1}, b_k) and piece K+1 covers [b_K, inf). Each piece is
/// stored in the local coordinate t = x - origin, where the origin is b_0 for
/// the left tail and the left endpoint otherwise. With no breakpoints there is
/// a single global piece with origin 0.
class PiecewisePoly {
 public:
  PiecewisePoly() : pieces_{Poly()} {}
  static PiecewisePoly constant(const Rational& v);
  /// CDF of a uniform law on [lo, hi].
  static PiecewisePoly uniform_cdf(const Rational& lo, const Rational& hi);
  /// CDF of a finite atom law given as (value, prob) pairs with increasing values.
  static PiecewisePoly step_cdf(const std::vector<std::pair<Rational, Rational>>& atoms);

  const std::vector<Rational>& breaks() const { return breaks_; }
  const std::vector<Poly>& pieces() const { return pieces_; }
  Rational origin(std::size_t piece) const;

  Rational operator()(const Rational& x) const;
  Rational left_limit(const Rational& x) const;
  double eval(double x) const;
  double eval_left(double x) const;

  /// The same function with extra breakpoints inserted.
  PiecewisePoly refined(const std::vector<Rational>& extra) const;
  /// x -> f(x - a).
  PiecewisePoly shifted(const Rational& a) const;
  /// Antiderivative A with A(b_0) = 0 (or A(0) = 0 without breakpoints).
  PiecewisePoly antiderivative() const;
  /// Exact integral over [a, b].
  Rational integral(const Rational& a, const Rational& b) const;
  /// Merges adjacent pieces that are the same polynomial.
  PiecewisePoly simplified() const;

  friend PiecewisePoly operator+(const PiecewisePoly& a, const PiecewisePoly& b);
  friend PiecewisePoly operator-(const PiecewisePoly& a, const PiecewisePoly& b);
  friend PiecewisePoly operator*(const PiecewisePoly& a, const PiecewisePoly& b);
  friend PiecewisePoly operator*(const Rational& s, const PiecewisePoly& a);

 private:
  std::size_t piece_index(const Rational& x) const;
  void build_cache();
  template <class Op>
  static PiecewisePoly combine(const PiecewisePoly& a, const PiecewisePoly& b, Op op);

  std::vector<Rational> breaks_;
  std::vector<Poly> pieces_;
  std::vector<double> breaks_d_;
  std::vector<std::vector<double>> coeffs_d_;
};

}  // namespace awarebid
