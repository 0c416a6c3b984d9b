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

#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "awarebid/distribution.hpp"
#include "awarebid/piecewise_poly.hpp"

namespace awarebid {

/// Finite law with exact atoms, values strictly increasing.
struct AtomLaw {
  std::vector<std::pair<Rational, Rational>> atoms;  // (value, prob)
};

/// Law given by an exact piecewise-polynomial CDF (0 on the left tail, 1 on
/// the right tail). Jumps are allowed. `uniform` is set when the law is a
/// plain uniform, which unlocks the exact convolution rule.
struct PiecewiseLaw {
  PiecewisePoly cdf;
  std::optional<std::pair<Rational, Rational>> uniform;
};

struct NormalComponent {
  double weight;
  double mean;
  double var;
};

/// Finite mixture of normals; what atoms convolved with normals produce.
struct NormalMixtureLaw {
  std::vector<NormalComponent> components;
};

/// Numeric CDF tabulated at lo + k * step, linearly interpolated, 0 below
/// the first node and 1 above the last.
struct GridLaw {
  double lo;
  double step;
  std::vector<double> cdf;
};

/// Default number of grid nodes for numeric convolution.
inline constexpr std::size_t kDefaultGridPoints = std::size_t{1} << 14;

/// Law of one bidder's estimated valuation from some perspective.
class ValuationLaw {
 public:
  using Rep = std::variant<AtomLaw, PiecewiseLaw, NormalMixtureLaw, GridLaw>;

  explicit ValuationLaw(Rep rep) : rep_(std::move(rep)) {}
  static ValuationLaw point_mass(const Rational& v);
  /// Law of E[X | signal] for one characteristic under `level`.
  static ValuationLaw of(const Distribution& d, const InfoLevel& level);

  const Rep& rep() const { return rep_; }
  bool is_exact() const {
    return std::holds_alternative<AtomLaw>(rep_) || std::holds_alternative<PiecewiseLaw>(rep_);
  }

  double cdf(double x) const;
  double cdf_left(double x) const;
  /// Exact CDF for atom and piecewise laws.
  std::optional<PiecewisePoly> exact_cdf() const;
  /// Points where the CDF is not smooth (atoms, piece boundaries, grid ends).
  std::vector<double> breakpoints() const;
  /// An interval holding all but about `tail` of the mass on each side.
  std::pair<double, double> range(double tail = 1e-12) const;
  double mean() const;
  std::optional<Rational> exact_mean() const;

 private:
  Rep rep_;
};

/// Law of the sum of two independent valuation laws. Exact for atoms with
/// atoms, any exact law with a plain uniform, atoms with piecewise laws, and
/// anything normal with atoms or normals. Other pairs fall back to a numeric
/// grid of `grid_points` nodes.
ValuationLaw convolve(const ValuationLaw& a, const ValuationLaw& b,
                      std::size_t grid_points = kDefaultGridPoints);

/// Convolves distributions directly (each under full information).
ValuationLaw convolve(const Distribution& a, const Distribution& b,
                      std::size_t grid_points = kDefaultGridPoints);

}  // namespace awarebid
