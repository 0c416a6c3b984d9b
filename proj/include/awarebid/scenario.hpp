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

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "awarebid/distribution.hpp"

namespace awarebid {

/// Raised when a scenario or policy violates an invariant.
class ScenarioError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Set of characteristics as a bitmask; bit j is characteristic j + 1.
/// Characteristic 1 (bit 0) is the mandatory default.
class AwarenessSet {
 public:
  static constexpr int kMaxCharacteristics = 32;

  AwarenessSet() = default;
  static AwarenessSet from_bits(std::uint32_t bits) { return AwarenessSet(bits); }
  /// From 1-based characteristic ids.
  static AwarenessSet of(std::initializer_list<int> ids);
  static AwarenessSet of(const std::vector<int>& ids);
  static AwarenessSet all(int m);

  std::uint32_t bits() const { return bits_; }
  /// 0-based membership test.
  bool contains(int j) const { return (bits_ >> j) & 1u; }
  bool has_default() const { return contains(0); }
  int size() const { return __builtin_popcount(bits_); }
  bool subset_of(const AwarenessSet& o) const { return (bits_ & ~o.bits_) == 0; }
  AwarenessSet with(int j) const { return AwarenessSet(bits_ | (1u << j)); }
  AwarenessSet without(int j) const { return AwarenessSet(bits_ & ~(1u << j)); }
  /// 1-based ids in increasing order.
  std::vector<int> ids() const;
  std::string to_string() const;

  friend AwarenessSet operator&(AwarenessSet a, AwarenessSet b) { return AwarenessSet(a.bits_ & b.bits_); }
  friend AwarenessSet operator|(AwarenessSet a, AwarenessSet b) { return AwarenessSet(a.bits_ | b.bits_); }
  friend bool operator==(AwarenessSet a, AwarenessSet b) { return a.bits_ == b.bits_; }
  friend bool operator!=(AwarenessSet a, AwarenessSet b) { return a.bits_ != b.bits_; }

 private:
  explicit AwarenessSet(std::uint32_t bits) : bits_(bits) {}
  std::uint32_t bits_ = 0;
};

/// Canonical lattice order: by cardinality, then lexicographically by ids.
bool lattice_less(const AwarenessSet& a, const AwarenessSet& b);

/// All subsets of {1..m} containing characteristic 1, in canonical order.
std::vector<AwarenessSet> lattice(int m);

/// Bidders, characteristics and the independent value law of every
/// (bidder, characteristic) pair.
struct Scenario {
  int n_bidders = 0;
  int m_characteristics = 0;
  std::vector<std::vector<Distribution>> laws;  // laws[i][j]
  std::vector<std::string> bidder_names;        // optional, may be empty

  const Distribution& law(int i, int j) const {
    return laws[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  }
};

/// Who is aware of what, and what each bidder learns about the
/// characteristics he is aware of. info[i][j] is present exactly when
/// bidder i is aware of characteristic j.
struct DisclosurePolicy {
  std::vector<AwarenessSet> awareness;
  std::vector<std::vector<std::optional<InfoLevel>>> info;

  const AwarenessSet& aware(int i) const { return awareness[static_cast<std::size_t>(i)]; }
  const InfoLevel& level(int i, int j) const {
    return *info[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  }
  /// Number of aware (bidder, non-default characteristic) pairs.
  int aware_pairs() const;

  friend bool operator==(const DisclosurePolicy& a, const DisclosurePolicy& b) {
    return a.awareness == b.awareness && a.info == b.info;
  }
};

/// Information each (bidder, characteristic) would receive if made aware;
/// fixed outside the seller's control.
using InfoPlan = std::vector<std::vector<InfoLevel>>;

InfoPlan uniform_plan(int n, int m, const InfoLevel& level);

/// Policy with the given awareness sets and info taken from `plan`.
DisclosurePolicy policy_from_plan(const std::vector<AwarenessSet>& awareness, const InfoPlan& plan);

/// Checks every invariant and returns the policy with canonical info levels.
/// Throws ScenarioError naming the offending bidder / characteristic.
void validate(const Scenario& s);
DisclosurePolicy validate(const Scenario& s, const DisclosurePolicy& p);

/// The policy as seen by an agent aware of `view`: bidder k's awareness
/// becomes M^k intersected with `view`, and info outside it is dropped.
DisclosurePolicy perceive(const DisclosurePolicy& p, const AwarenessSet& view);

/// Union of all awareness sets.
AwarenessSet full_set(const Scenario& s);

}  // namespace awarebid
