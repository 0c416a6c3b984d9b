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

#include "awarebid/distribution.hpp"

#include <algorithm>
#include <boost/math/distributions/normal.hpp>
#include <cmath>
#include <map>
#include <sstream>

namespace awarebid {
namespace {

const boost::math::normal kStdNormal(0.0, 1.0);

double phi(double z) { return boost::math::pdf(kStdNormal, z); }
double Phi(double z) { return boost::math::cdf(kStdNormal, z); }

// First-appearance renumbering of discrete cell labels.
std::vector<int> canonical_labels(const std::vector<int>& labels) {
  std::map<int, int> remap;
  std::vector<int> out;
  out.reserve(labels.size());
  for (int l : labels) {
    auto [it, inserted] = remap.emplace(l, static_cast<int>(remap.size()));
    out.push_back(it->second);
  }
  return out;
}

int distinct_count(const std::vector<int>& labels) {
  std::vector<int> sorted = labels;
  std::sort(sorted.begin(), sorted.end());
  return static_cast<int>(std::unique(sorted.begin(), sorted.end()) - sorted.begin());
}

// Interval bounds [a, b) of continuous cell `k`, with infinities for open ends.
std::pair<double, double> cell_bounds(const Distribution& d, const InfoLevel& level, int k) {
  double a = -INFINITY, b = INFINITY;
  if (d.is_uniform()) {
    a = d.as_uniform().lo.get_d();
    b = d.as_uniform().hi.get_d();
  }
  if (k > 0) a = level.cutpoints[static_cast<std::size_t>(k - 1)].get_d();
  if (static_cast<std::size_t>(k) < level.cutpoints.size()) {
    b = level.cutpoints[static_cast<std::size_t>(k)].get_d();
  }
  return {a, b};
}

double truncated_normal_mean(const NormalLaw& n, double a, double b) {
  const double alpha = (a - n.mean) / n.stddev;
  const double beta = (b - n.mean) / n.stddev;
  const double pa = std::isinf(alpha) ? 0.0 : phi(alpha);
  const double pb = std::isinf(beta) ? 0.0 : phi(beta);
  // Use the upper tail when the cell sits in the right tail to keep precision.
  double mass;
  if (alpha > 0) {
    mass = Phi(-alpha) - (std::isinf(beta) ? 0.0 : Phi(-beta));
  } else {
    mass = (std::isinf(beta) ? 1.0 : Phi(beta)) - (std::isinf(alpha) ? 0.0 : Phi(alpha));
  }
  if (!(mass > 0)) throw DistributionError("information cell has zero probability");
  return n.mean + n.stddev * (pa - pb) / mass;
}

}  // namespace

Distribution Distribution::uniform(Rational lo, Rational hi) {
  if (!(lo < hi)) throw DistributionError("uniform law needs lo < hi");
  return Distribution(UniformLaw{std::move(lo), std::move(hi)});
}

Distribution Distribution::normal(double mean, double stddev) {
  if (!std::isfinite(mean) || !std::isfinite(stddev)) {
    throw DistributionError("normal law needs finite parameters");
  }
  if (!(stddev > 0)) throw DistributionError("normal law needs stddev > 0");
  return Distribution(NormalLaw{mean, stddev});
}

Distribution Distribution::discrete(std::vector<Atom> atoms) {
  if (atoms.size() < 2) throw DistributionError("discrete law needs at least 2 support points");
  Rational total = 0;
  for (std::size_t k = 0; k < atoms.size(); ++k) {
    atoms[k].value.canonicalize();
    atoms[k].prob.canonicalize();
    if (atoms[k].prob <= 0) throw DistributionError("discrete probabilities must be positive");
    if (k > 0 && !(atoms[k - 1].value < atoms[k].value)) {
      throw DistributionError("discrete support values must be strictly increasing");
    }
    total += atoms[k].prob;
  }
  if (total != 1) {
    throw DistributionError("discrete probabilities sum to " + to_string(total) + ", not 1");
  }
  return Distribution(DiscreteLaw{std::move(atoms)});
}

std::optional<std::size_t> Distribution::support_size() const {
  if (is_discrete()) return as_discrete().atoms.size();
  return std::nullopt;
}

bool operator==(const Distribution& a, const Distribution& b) {
  if (a.kind_.index() != b.kind_.index()) return false;
  if (a.is_uniform()) {
    return a.as_uniform().lo == b.as_uniform().lo && a.as_uniform().hi == b.as_uniform().hi;
  }
  if (a.is_normal()) {
    return a.as_normal().mean == b.as_normal().mean && a.as_normal().stddev == b.as_normal().stddev;
  }
  const auto& x = a.as_discrete().atoms;
  const auto& y = b.as_discrete().atoms;
  if (x.size() != y.size()) return false;
  for (std::size_t k = 0; k < x.size(); ++k) {
    if (x[k].value != y[k].value || x[k].prob != y[k].prob) return false;
  }
  return true;
}

std::string describe(const Distribution& d) {
  std::ostringstream os;
  if (d.is_uniform()) {
    os << "uniform(" << to_string(d.as_uniform().lo) << ", " << to_string(d.as_uniform().hi) << ")";
  } else if (d.is_normal()) {
    os << "normal(" << d.as_normal().mean << ", " << d.as_normal().stddev << ")";
  } else {
    os << "discrete{";
    bool first = true;
    for (const auto& a : d.as_discrete().atoms) {
      os << (first ? "" : ", ") << to_string(a.value) << ":" << to_string(a.prob);
      first = false;
    }
    os << "}";
  }
  return os.str();
}

std::optional<Rational> exact_mean(const Distribution& d) {
  if (d.is_uniform()) {
    Rational m = (d.as_uniform().lo + d.as_uniform().hi) / 2;
    m.canonicalize();
    return m;
  }
  if (d.is_discrete()) {
    Rational m = 0;
    for (const auto& a : d.as_discrete().atoms) m += a.value * a.prob;
    m.canonicalize();
    return m;
  }
  return std::nullopt;
}

double mean(const Distribution& d) {
  if (d.is_normal()) return d.as_normal().mean;
  return exact_mean(d)->get_d();
}

double cdf(const Distribution& d, double x) {
  if (d.is_uniform()) {
    const double lo = d.as_uniform().lo.get_d(), hi = d.as_uniform().hi.get_d();
    if (x <= lo) return 0.0;
    if (x >= hi) return 1.0;
    return (x - lo) / (hi - lo);
  }
  if (d.is_normal()) {
    if (std::isinf(x)) return x > 0 ? 1.0 : 0.0;
    return Phi((x - d.as_normal().mean) / d.as_normal().stddev);
  }
  Rational acc = 0;
  for (const auto& a : d.as_discrete().atoms) {
    if (a.value.get_d() > x) break;
    acc += a.prob;
  }
  return acc.get_d();
}

double quantile(const Distribution& d, double u) {
  if (!(u > 0 && u < 1)) throw DistributionError("quantile needs u in (0, 1)");
  if (d.is_uniform()) {
    const double lo = d.as_uniform().lo.get_d(), hi = d.as_uniform().hi.get_d();
    return lo + u * (hi - lo);
  }
  if (d.is_normal()) {
    return d.as_normal().mean + d.as_normal().stddev * boost::math::quantile(kStdNormal, u);
  }
  const auto& atoms = d.as_discrete().atoms;
  Rational acc = 0;
  for (std::size_t k = 0; k + 1 < atoms.size(); ++k) {
    acc += atoms[k].prob;
    if (u <= acc.get_d()) return atoms[k].value.get_d();
  }
  return atoms.back().value.get_d();
}

std::string describe(const InfoLevel& level) {
  switch (level.kind) {
    case InfoLevel::Kind::kNone:
      return "none";
    case InfoLevel::Kind::kFull:
      return "full";
    case InfoLevel::Kind::kPartition:
      break;
  }
  std::ostringstream os;
  if (!level.labels.empty()) {
    os << "labels[";
    for (std::size_t k = 0; k < level.labels.size(); ++k) os << (k ? "," : "") << level.labels[k];
  } else {
    os << "cuts[";
    for (std::size_t k = 0; k < level.cutpoints.size(); ++k) {
      os << (k ? "," : "") << to_string(level.cutpoints[k]);
    }
  }
  os << "]";
  return os.str();
}

void validate(const Distribution& d, const InfoLevel& level) {
  if (level.kind != InfoLevel::Kind::kPartition) {
    if (!level.cutpoints.empty() || !level.labels.empty()) {
      throw DistributionError("only partitions carry cutpoints or labels");
    }
    return;
  }
  if (d.is_discrete()) {
    if (!level.cutpoints.empty()) throw DistributionError("discrete partitions use labels, not cutpoints");
    if (level.labels.size() != d.as_discrete().atoms.size()) {
      throw DistributionError("partition needs one label per support point");
    }
    for (int l : level.labels) {
      if (l < 0) throw DistributionError("partition labels must be non-negative");
    }
    return;
  }
  if (!level.labels.empty()) throw DistributionError("continuous partitions use cutpoints, not labels");
  for (std::size_t k = 1; k < level.cutpoints.size(); ++k) {
    if (!(level.cutpoints[k - 1] < level.cutpoints[k])) {
      throw DistributionError("cutpoints must be strictly increasing");
    }
  }
  if (d.is_uniform()) {
    for (const auto& c : level.cutpoints) {
      if (!(d.as_uniform().lo < c && c < d.as_uniform().hi)) {
        throw DistributionError("cutpoint " + to_string(c) + " leaves an empty cell");
      }
    }
  }
}

InfoLevel canonicalize(const Distribution& d, const InfoLevel& level) {
  validate(d, level);
  if (level.kind != InfoLevel::Kind::kPartition) return level;
  if (d.is_discrete()) {
    auto labels = canonical_labels(level.labels);
    const int cells = distinct_count(labels);
    if (cells == 1) return InfoLevel::none();
    if (static_cast<std::size_t>(cells) == labels.size()) return InfoLevel::full();
    return InfoLevel::groups(std::move(labels));
  }
  if (level.cutpoints.empty()) return InfoLevel::none();
  return level;
}

std::optional<std::size_t> cell_count(const Distribution& d, const InfoLevel& level) {
  switch (level.kind) {
    case InfoLevel::Kind::kNone:
      return 1;
    case InfoLevel::Kind::kFull:
      return d.support_size();
    case InfoLevel::Kind::kPartition:
      break;
  }
  if (d.is_discrete()) return static_cast<std::size_t>(distinct_count(level.labels));
  return level.cutpoints.size() + 1;
}

SignalCell cell_of(const Distribution& d, const InfoLevel& level, double x) {
  if (d.is_uniform()) {
    if (x < d.as_uniform().lo.get_d() || x > d.as_uniform().hi.get_d()) {
      throw DistributionError("value outside the support");
    }
  }
  if (std::isnan(x)) throw DistributionError("value outside the support");
  int atom = -1;
  if (d.is_discrete()) {
    const auto& atoms = d.as_discrete().atoms;
    for (std::size_t k = 0; k < atoms.size(); ++k) {
      if (atoms[k].value.get_d() == x) {
        atom = static_cast<int>(k);
        break;
      }
    }
    if (atom < 0) throw DistributionError("value outside the support");
  }
  switch (level.kind) {
    case InfoLevel::Kind::kNone:
      return {0, x};
    case InfoLevel::Kind::kFull:
      return {d.is_discrete() ? atom : 0, x};
    case InfoLevel::Kind::kPartition:
      break;
  }
  if (d.is_discrete()) {
    return {canonical_labels(level.labels)[static_cast<std::size_t>(atom)], x};
  }
  int k = 0;
  while (static_cast<std::size_t>(k) < level.cutpoints.size() &&
         x >= level.cutpoints[static_cast<std::size_t>(k)].get_d()) {
    ++k;
  }
  return {k, x};
}

double conditional_mean(const Distribution& d, const InfoLevel& level, const SignalCell& cell) {
  switch (level.kind) {
    case InfoLevel::Kind::kNone:
      return mean(d);
    case InfoLevel::Kind::kFull:
      return cell.value;
    case InfoLevel::Kind::kPartition:
      break;
  }
  const auto count = cell_count(d, level);
  if (cell.cell < 0 || static_cast<std::size_t>(cell.cell) >= *count) {
    throw DistributionError("invalid information cell");
  }
  if (d.is_normal()) {
    auto [a, b] = cell_bounds(d, level, cell.cell);
    return truncated_normal_mean(d.as_normal(), a, b);
  }
  return exact_cells(d, level)[static_cast<std::size_t>(cell.cell)].mean.get_d();
}

std::vector<ExactCell> exact_cells(const Distribution& d, const InfoLevel& level) {
  if (d.is_normal()) throw DistributionError("normal laws have no exact cells");
  if (d.is_uniform()) {
    if (level.kind == InfoLevel::Kind::kFull) {
      throw DistributionError("full information on a continuous law has no finite cells");
    }
    const auto& u = d.as_uniform();
    std::vector<Rational> edges{u.lo};
    for (const auto& c : level.cutpoints) edges.push_back(c);
    edges.push_back(u.hi);
    std::vector<ExactCell> out;
    for (std::size_t k = 0; k + 1 < edges.size(); ++k) {
      Rational p = (edges[k + 1] - edges[k]) / (u.hi - u.lo);
      Rational m = (edges[k] + edges[k + 1]) / 2;
      p.canonicalize();
      m.canonicalize();
      out.push_back({p, m});
    }
    return out;
  }
  const auto& atoms = d.as_discrete().atoms;
  std::vector<int> labels;
  switch (level.kind) {
    case InfoLevel::Kind::kNone:
      labels.assign(atoms.size(), 0);
      break;
    case InfoLevel::Kind::kFull:
      for (std::size_t k = 0; k < atoms.size(); ++k) labels.push_back(static_cast<int>(k));
      break;
    case InfoLevel::Kind::kPartition:
      labels = canonical_labels(level.labels);
      break;
  }
  const int cells = distinct_count(labels);
  std::vector<ExactCell> out(static_cast<std::size_t>(cells), ExactCell{0, 0});
  for (std::size_t k = 0; k < atoms.size(); ++k) {
    auto& c = out[static_cast<std::size_t>(labels[k])];
    c.prob += atoms[k].prob;
    c.mean += atoms[k].prob * atoms[k].value;
  }
  for (auto& c : out) {
    c.mean /= c.prob;
    c.mean.canonicalize();
    c.prob.canonicalize();
  }
  return out;
}

double cell_probability(const Distribution& d, const InfoLevel& level, int cell) {
  const auto count = cell_count(d, level);
  if (!count) throw DistributionError("full information on a continuous law has no finite cells");
  if (cell < 0 || static_cast<std::size_t>(cell) >= *count) throw DistributionError("invalid information cell");
  if (d.is_normal()) {
    if (level.kind == InfoLevel::Kind::kNone) return 1.0;
    auto [a, b] = cell_bounds(d, level, cell);
    return cdf(d, b) - cdf(d, a);
  }
  return exact_cells(d, level)[static_cast<std::size_t>(cell)].prob.get_d();
}

}  // namespace awarebid
