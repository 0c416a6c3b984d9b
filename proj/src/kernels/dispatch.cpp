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

#include <stdexcept>

#include "awarebid/kernels.hpp"

namespace awarebid {

std::string_view isa_name(Isa isa) { return isa == Isa::kAvx2 ? "avx2" : "scalar"; }

bool isa_supported(Isa isa) {
  if (isa == Isa::kScalar) return true;
#if defined(__x86_64__) || defined(__i386__)
  static const bool avx2 = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  return avx2;
#else
  return false;
#endif
}

Isa detected_isa() { return isa_supported(Isa::kAvx2) ? Isa::kAvx2 : Isa::kScalar; }

void settle_block(Isa isa, const SettleArgs& args) {
  if (args.n_bidders < 2 || args.n_bidders > 64) throw std::invalid_argument("settle needs 2..64 bidders");
  if (isa == Isa::kAvx2 && isa_supported(Isa::kAvx2)) {
    kernels_avx2::settle_block(args);
  } else {
    kernels_scalar::settle_block(args);
  }
}

void convolve_masses(Isa isa, const ConvolveArgs& args) {
  if (isa == Isa::kAvx2 && isa_supported(Isa::kAvx2)) {
    kernels_avx2::convolve_masses(args);
  } else {
    kernels_scalar::convolve_masses(args);
  }
}

}  // namespace awarebid
