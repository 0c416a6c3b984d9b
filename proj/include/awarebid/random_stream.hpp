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

#include <array>
#include <cstdint>

namespace awarebid {

/// Philox4x32-10 block function (Salmon et al., SC'11). Pure; no state.
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter,
                                        std::array<std::uint32_t, 2> key);

/// Counter-based uniform variates keyed by (seed, draw index, lane).
///
/// Every variate is a pure function of its key, so workers can evaluate any
/// draw in any order and two scenarios sharing a seed see the same variate for
/// the same (bidder, characteristic, draw).
class RandomStream {
 public:
  /// Lane reserved for tie-breaking; never collides with (bidder, characteristic).
  static constexpr std::uint32_t kTieLane = 0xFFFFFFFFu;

  RandomStream(std::uint64_t seed, std::uint64_t draw_index) : seed_(seed), draw_(draw_index) {}

  /// Uniform on the open interval (0, 1) with 53 random bits.
  double uniform(std::uint32_t lane_a, std::uint32_t lane_b) const;

  std::uint64_t seed() const { return seed_; }
  std::uint64_t draw_index() const { return draw_; }

 private:
  std::uint64_t seed_;
  std::uint64_t draw_;
};

}  // namespace awarebid
