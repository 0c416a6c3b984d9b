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

#include "awarebid/piecewise_poly.hpp"

#include <algorithm>
#include <map>
#include <iterator>

namespace awarebid {

Poly::Poly(std::vector<Rational> c) : c_(std::move(c)) {
  for (auto& x : c_) x.canonicalize();
  trim();
}

void Poly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Rational Poly::operator()(const Rational& t) const {
  Rational acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * t + *it;
  return acc;
}

Poly Poly::taylor_shift(const Rational& delta) const {
  if (delta == 0 || c_.size() <= 1) return *this;
  // Repeated synthetic division (Horner's scheme for Taylor coefficients).
  std::vector<Rational> a = c_;
  const std::size_t n = a.size();
  for (std::size_t i = 0; i + 1 < n; ++i) {
    for (std::size_t j = n - 1; j > i; --j) a[j - 1] += delta * a[j];
  }
  return Poly(std::move(a));
}

Poly Poly::integral() const {
  if (c_.empty()) return {};
  std::vector<Rational> a(c_.size() + 1, Rational(0));
  for (std::size_t k = 0; k < c_.size(); ++k) a[k + 1] = c_[k] / Rational(static_cast<long>(k + 1));
  return Poly(std::move(a));
}

Poly operator+(const Poly& a, const Poly& b) {
  std::vector<Rational> c(std::max(a.c_.size(), b.c_.size()), Rational(0));
  for (std::size_t k = 0; k < a.c_.size(); ++k) c[k] += a.c_[k];
  for (std::size_t k = 0; k < b.c_.size(); ++k) c[k] += b.c_[k];
  return Poly(std::move(c));
}

Poly operator-(const Poly& a, const Poly& b) { return a + Rational(-1) * b; }

Poly operator*(const Poly& a, const Poly& b) {
  if (a.c_.empty() || b.c_.empty()) return {};
  std::vector<Rational> c(a.c_.size() + b.c_.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i] == 0) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
  }
  return Poly(std::move(c));
}

Poly operator*(const Rational& s, const Poly& a) {
  if (s == 0) return {};
  std::vector<Rational> c = a.c_;
  for (auto& x : c) x *= s;
  return Poly(std::move(c));
}

PiecewisePoly PiecewisePoly::constant(const Rational& v) {
  PiecewisePoly p;
  p.pieces_ = {Poly::constant(v)};
  p.build_cache();
  return p;
}

PiecewisePoly PiecewisePoly::uniform_cdf(const Rational& lo, const Rational& hi) {
  PiecewisePoly p;
  Rational inv = 1 / (hi - lo);
  p.breaks_ = {lo, hi};
  p.pieces_ = {Poly(), Poly({Rational(0), inv}), Poly::constant(1)};
  p.build_cache();
  return p;
}

PiecewisePoly PiecewisePoly::step_cdf(const std::vector<std::pair<Rational, Rational>>& atoms) {
  std::map<Rational, Rational> merged;
  for (const auto& [v, w] : atoms) merged[v] += w;
  PiecewisePoly p;
  Rational acc = 0;
  for (const auto& [v, w] : merged) {
    p.breaks_.push_back(v);
    acc += w;
    acc.canonicalize();
    p.pieces_.push_back(Poly::constant(acc));
  }
  p.build_cache();
  return p;
}

Rational PiecewisePoly::origin(std::size_t piece) const {
  if (breaks_.empty()) return 0;
  if (piece == 0) return breaks_[0];
  return breaks_[piece - 1];
}

std::size_t PiecewisePoly::piece_index(const Rational& x) const {
  return static_cast<std::size_t>(std::upper_bound(breaks_.begin(), breaks_.end(), x) - breaks_.begin());
}

Rational PiecewisePoly::operator()(const Rational& x) const {
  const std::size_t k = piece_index(x);
  return pieces_[k](x - origin(k));
}

Rational PiecewisePoly::left_limit(const Rational& x) const {
  const std::size_t k =
      static_cast<std::size_t>(std::lower_bound(breaks_.begin(), breaks_.end(), x) - breaks_.begin());
  return pieces_[k](x - origin(k));
}

void PiecewisePoly::build_cache() {
  breaks_d_.clear();
  for (const auto& b : breaks_) breaks_d_.push_back(b.get_d());
  coeffs_d_.clear();
  for (const auto& p : pieces_) {
    std::vector<double> c;
    for (const auto& x : p.coeffs()) c.push_back(x.get_d());
    coeffs_d_.push_back(std::move(c));
  }
}

double PiecewisePoly::eval(double x) const {
  const std::size_t k =
      static_cast<std::size_t>(std::upper_bound(breaks_d_.begin(), breaks_d_.end(), x) - breaks_d_.begin());
  const double t = x - (breaks_d_.empty() ? 0.0 : breaks_d_[k == 0 ? 0 : k - 1]);
  double acc = 0;
  const auto& c = coeffs_d_[k];
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * t + *it;
  return acc;
}

double PiecewisePoly::eval_left(double x) const {
  const std::size_t k =
      static_cast<std::size_t>(std::lower_bound(breaks_d_.begin(), breaks_d_.end(), x) - breaks_d_.begin());
  const double t = x - (breaks_d_.empty() ? 0.0 : breaks_d_[k == 0 ? 0 : k - 1]);
  double acc = 0;
  const auto& c = coeffs_d_[k];
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * t + *it;
  return acc;
}

PiecewisePoly PiecewisePoly::refined(const std::vector<Rational>& extra) const {
  std::vector<Rational> merged;
  std::vector<Rational> sorted_extra = extra;
  std::sort(sorted_extra.begin(), sorted_extra.end());
  std::set_union(breaks_.begin(), breaks_.end(), sorted_extra.begin(), sorted_extra.end(),
                 std::back_inserter(merged));
  merged.erase(std::unique(merged.begin(), merged.end()), merged.end());
  if (merged == breaks_) return *this;
  PiecewisePoly out;
  out.breaks_ = merged;
  out.pieces_.clear();
  out.pieces_.reserve(merged.size() + 1);
  // Left tail: the old piece containing points just below merged[0],
  // re-centred at merged[0].
  const std::size_t below =
      static_cast<std::size_t>(std::lower_bound(breaks_.begin(), breaks_.end(), merged[0]) - breaks_.begin());
  out.pieces_.push_back(pieces_[below].taylor_shift(merged[0] - origin(below)));
  for (const auto& b : merged) {
    const std::size_t k = piece_index(b);
    out.pieces_.push_back(pieces_[k].taylor_shift(b - origin(k)));
  }
  out.build_cache();
  return out;
}

PiecewisePoly PiecewisePoly::shifted(const Rational& a) const {
  PiecewisePoly out = *this;
  if (out.breaks_.empty()) {
    out.pieces_[0] = pieces_[0].taylor_shift(-a);
  } else {
    for (auto& b : out.breaks_) b += a;
  }
  out.build_cache();
  return out;
}

PiecewisePoly PiecewisePoly::antiderivative() const {
  PiecewisePoly out;
  out.breaks_ = breaks_;
  out.pieces_.clear();
  if (breaks_.empty()) {
    out.pieces_.push_back(pieces_[0].integral());
    out.build_cache();
    return out;
  }
  // Left tail integrates to zero at b_0.
  out.pieces_.push_back(pieces_[0].integral());
  Rational acc = 0;
  for (std::size_t k = 1; k < pieces_.size(); ++k) {
    Poly q = pieces_[k].integral() + Poly::constant(acc);
    if (k < breaks_.size()) acc = q(breaks_[k] - breaks_[k - 1]);
    out.pieces_.push_back(std::move(q));
  }
  out.build_cache();
  return out;
}

Rational PiecewisePoly::integral(const Rational& a, const Rational& b) const {
  const PiecewisePoly anti = antiderivative();
  Rational r = anti(b) - anti(a);
  r.canonicalize();
  return r;
}

PiecewisePoly PiecewisePoly::simplified() const {
  if (breaks_.empty()) return *this;
  // Express every piece around its own origin; two neighbours merge when the
  // right one equals the left one re-centred at the shared breakpoint.
  std::vector<Rational> nb;
  std::vector<Poly> np{pieces_[0]};
  std::vector<Rational> origins{breaks_[0]};
  for (std::size_t k = 1; k < pieces_.size(); ++k) {
    const Rational& b = breaks_[k - 1];
    const Poly shifted_prev = np.back().taylor_shift(b - origins.back());
    if (shifted_prev == pieces_[k]) continue;
    nb.push_back(b);
    np.push_back(pieces_[k]);
    origins.push_back(b);
  }
  PiecewisePoly out;
  if (nb.empty()) {
    out.pieces_ = {np[0].taylor_shift(-breaks_[0])};
  } else {
    out.breaks_ = nb;
    out.pieces_ = np;
    // The left tail was centred at the old b_0; re-centre at the new first break.
    out.pieces_[0] = np[0].taylor_shift(nb[0] - breaks_[0]);
  }
  out.build_cache();
  return out;
}

template <class Op>
PiecewisePoly PiecewisePoly::combine(const PiecewisePoly& a, const PiecewisePoly& b, Op op) {
  PiecewisePoly ra = a.refined(b.breaks_);
  PiecewisePoly rb = b.refined(a.breaks_);
  if (ra.breaks_.empty() && !rb.breaks_.empty()) ra = ra.refined(rb.breaks_);
  if (rb.breaks_.empty() && !ra.breaks_.empty()) rb = rb.refined(ra.breaks_);
  PiecewisePoly out;
  out.breaks_ = ra.breaks_;
  out.pieces_.clear();
  for (std::size_t k = 0; k < ra.pieces_.size(); ++k) out.pieces_.push_back(op(ra.pieces_[k], rb.pieces_[k]));
  out.build_cache();
  return out;
}

PiecewisePoly operator+(const PiecewisePoly& a, const PiecewisePoly& b) {
  return PiecewisePoly::combine(a, b, [](const Poly& x, const Poly& y) { return x + y; });
}

PiecewisePoly operator-(const PiecewisePoly& a, const PiecewisePoly& b) {
  return PiecewisePoly::combine(a, b, [](const Poly& x, const Poly& y) { return x - y; });
}

PiecewisePoly operator*(const PiecewisePoly& a, const PiecewisePoly& b) {
  return PiecewisePoly::combine(a, b, [](const Poly& x, const Poly& y) { return x * y; });
}

PiecewisePoly operator*(const Rational& s, const PiecewisePoly& a) {
  PiecewisePoly out = a;
  for (auto& p : out.pieces_) p = s * p;
  out.build_cache();
  return out;
}

}  // namespace awarebid
