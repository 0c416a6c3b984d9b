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

#include <cstddef>
#include <string_view>

namespace awarebid {

enum class Isa { kScalar, kAvx2 };

std::string_view isa_name(Isa isa);
/// Best instruction set the running CPU supports.
Isa detected_isa();
bool isa_supported(Isa isa);

/// Structure-of-arrays block of bids: bids[i][d] is bidder i's bid on draw d.
/// Per draw it writes the highest and second-highest bid, bidder i's share of
/// the win (1/|ties| when tied at the top, else 0 or 1), and bidder i's
/// surplus share * (first - second). Results are bit-identical across ISAs.
struct SettleArgs {
  int n_bidders;
  std::size_t count;
  const double* const* bids;
  double* first;
  double* second;
  double* const* share;
  double* const* surplus;
};

/// out[k + l] += a[k] * b[l] with fused multiply-adds, accumulated row by
/// row; `out` must hold na + nb - 1 zero-initialised entries. Bit-identical
/// across ISAs.
struct ConvolveArgs {
  const double* a;
  std::size_t na;
  const double* b;
  std::size_t nb;
  double* out;
};

void settle_block(Isa isa, const SettleArgs& args);
void convolve_masses(Isa isa, const ConvolveArgs& args);

namespace kernels_scalar {
void settle_block(const SettleArgs& args);
void convolve_masses(const ConvolveArgs& args);
}  // namespace kernels_scalar

namespace kernels_avx2 {
void settle_block(const SettleArgs& args);
void convolve_masses(const ConvolveArgs& args);
}  // namespace kernels_avx2

}  // namespace awarebid
