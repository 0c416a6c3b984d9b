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
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "awarebid/rational.hpp"

namespace awarebid {

/// Thrown for malformed distributions, information levels and signal cells.
class DistributionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct UniformLaw {
  Rational lo;
  Rational hi;
};

struct NormalLaw {
  double mean;
  double stddev;
};

struct Atom {
  Rational value;
  Rational prob;
};

struct DiscreteLaw {
  std::vector<Atom> atoms;  // strictly increasing values
};

/// The value law of one characteristic for one bidder. Immutable; the
/// factories reject degenerate (almost surely constant) laws.
class Distribution {
 public:
  using Kind = std::variant<UniformLaw, NormalLaw, DiscreteLaw>;

  static Distribution uniform(Rational lo, Rational hi);
  static Distribution normal(double mean, double stddev);
  static Distribution discrete(std::vector<Atom> atoms);

  const Kind& kind() const { return kind_; }
  bool is_discrete() const { return std::holds_alternative<DiscreteLaw>(kind_); }
  bool is_uniform() const { return std::holds_alternative<UniformLaw>(kind_); }
  bool is_normal() const { return std::holds_alternative<NormalLaw>(kind_); }
  const DiscreteLaw& as_discrete() const { return std::get<DiscreteLaw>(kind_); }
  const UniformLaw& as_uniform() const { return std::get<UniformLaw>(kind_); }
  const NormalLaw& as_normal() const { return std::get<NormalLaw>(kind_); }

  /// Number of support points, or nullopt for continuous laws.
  std::optional<std::size_t> support_size() const;

  friend bool operator==(const Distribution& a, const Distribution& b);

 private:
  explicit Distribution(Kind k) : kind_(std::move(k)) {}
  Kind kind_;
};

std::string describe(const Distribution& d);

double mean(const Distribution& d);
/// Exact mean for uniform and discrete laws; nullopt for normal.
std::optional<Rational> exact_mean(const Distribution& d);

double cdf(const Distribution& d, double x);
/// Left-continuous quantile: the smallest x with cdf(x) >= u, u in (0, 1).
double quantile(const Distribution& d, double u);
/// Inverse-CDF transform of one uniform variate.
inline double sample(const Distribution& d, double u) { return quantile(d, u); }

/// How much a bidder learns about one characteristic.
///
/// For continuous laws a partition is given by interior cutpoints; the cells
/// are [lo, c1), [c1, c2), ..., [ck, hi]. For discrete laws it is given by one
/// cell label per support point.
struct InfoLevel {
  enum class Kind { kNone, kFull, kPartition };
  Kind kind = Kind::kNone;
  std::vector<Rational> cutpoints;
  std::vector<int> labels;

  static InfoLevel none() { return {}; }
  static InfoLevel full() { return {Kind::kFull, {}, {}}; }
  static InfoLevel cuts(std::vector<Rational> c) { return {Kind::kPartition, std::move(c), {}}; }
  static InfoLevel groups(std::vector<int> l) { return {Kind::kPartition, {}, std::move(l)}; }

  friend bool operator==(const InfoLevel& a, const InfoLevel& b) {
    return a.kind == b.kind && a.cutpoints == b.cutpoints && a.labels == b.labels;
  }
};

std::string describe(const InfoLevel& level);

/// Checks that `level` is a valid partition for `d`; throws DistributionError.
void validate(const Distribution& d, const InfoLevel& level);

/// Structural normal form. One-cell partitions become kNone. Discrete labels
/// are renumbered by first appearance, and an all-singleton discrete
/// partition becomes kFull.
InfoLevel canonicalize(const Distribution& d, const InfoLevel& level);

/// A realized element of an information partition. `cell` is the interval
/// index (continuous partition), the renumbered label (discrete partition),
/// the support index (discrete, full information) or 0 (no information).
/// `value` carries the realization itself under full information.
struct SignalCell {
  int cell = 0;
  double value = 0.0;
};

/// Number of cells; nullopt for full information on a continuous law.
std::optional<std::size_t> cell_count(const Distribution& d, const InfoLevel& level);

SignalCell cell_of(const Distribution& d, const InfoLevel& level, double x);

/// E[X | cell].
double conditional_mean(const Distribution& d, const InfoLevel& level, const SignalCell& cell);

/// Exact P(cell) and E[X | cell] for every cell of a finite partition of a
/// discrete or uniform law, in cell order. Throws for normal laws and for
/// full information on a uniform law.
struct ExactCell {
  Rational prob;
  Rational mean;
};
std::vector<ExactCell> exact_cells(const Distribution& d, const InfoLevel& level);

/// P(cell) for a finite partition, as a double.
double cell_probability(const Distribution& d, const InfoLevel& level, int cell);

}  // namespace awarebid
