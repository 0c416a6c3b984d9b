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

#include <cmath>
#include <limits>

#include "awarebid/kernels.hpp"

namespace awarebid::kernels_scalar {

void settle_block(const SettleArgs& args) {
  const int n = args.n_bidders;
  for (std::size_t d = 0; d < args.count; ++d) {
    double first = args.bids[0][d];
    for (int i = 1; i < n; ++i) first = args.bids[i][d] > first ? args.bids[i][d] : first;
    double ties = 0.0;
    double second = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i) {
      const double b = args.bids[i][d];
      if (b == first) {
        ties += 1.0;
      } else {
        second = b > second ? b : second;
      }
    }
    if (ties >= 2.0) second = first;
    const double inv = 1.0 / ties;
    const double gap = first - second;
    args.first[d] = first;
    args.second[d] = second;
    for (int i = 0; i < n; ++i) {
      const double s = args.bids[i][d] == first ? inv : 0.0;
      args.share[i][d] = s;
      args.surplus[i][d] = s * gap;
    }
  }
}

void convolve_masses(const ConvolveArgs& args) {
  for (std::size_t k = 0; k < args.na; ++k) {
    const double ak = args.a[k];
    double* row = args.out + k;
    for (std::size_t l = 0; l < args.nb; ++l) row[l] = std::fma(ak, args.b[l], row[l]);
  }
}

}  // namespace awarebid::kernels_scalar
