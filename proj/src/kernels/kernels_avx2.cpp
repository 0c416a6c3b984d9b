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

// Compiled with -mavx2 -mfma; only reached after a runtime CPU check.

#include <immintrin.h>

#include <cmath>
#include <limits>

#include "awarebid/kernels.hpp"

namespace awarebid::kernels_avx2 {

void settle_block(const SettleArgs& args) {
  const int n = args.n_bidders;
  const std::size_t vec_end = args.count - args.count % 4;
  const __m256d neg_inf = _mm256_set1_pd(-std::numeric_limits<double>::infinity());
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d two = _mm256_set1_pd(2.0);
  const __m256d zero = _mm256_setzero_pd();
  for (std::size_t d = 0; d < vec_end; d += 4) {
    __m256d first = _mm256_loadu_pd(args.bids[0] + d);
    for (int i = 1; i < n; ++i) {
      const __m256d b = _mm256_loadu_pd(args.bids[i] + d);
      // Same selection as the scalar "b > first ? b : first".
      first = _mm256_blendv_pd(first, b, _mm256_cmp_pd(b, first, _CMP_GT_OQ));
    }
    __m256d ties = zero;
    __m256d second = neg_inf;
    for (int i = 0; i < n; ++i) {
      const __m256d b = _mm256_loadu_pd(args.bids[i] + d);
      const __m256d eq = _mm256_cmp_pd(b, first, _CMP_EQ_OQ);
      ties = _mm256_add_pd(ties, _mm256_and_pd(eq, one));
      const __m256d gt = _mm256_andnot_pd(eq, _mm256_cmp_pd(b, second, _CMP_GT_OQ));
      second = _mm256_blendv_pd(second, b, gt);
    }
    second = _mm256_blendv_pd(second, first, _mm256_cmp_pd(ties, two, _CMP_GE_OQ));
    const __m256d inv = _mm256_div_pd(one, ties);
    const __m256d gap = _mm256_sub_pd(first, second);
    _mm256_storeu_pd(args.first + d, first);
    _mm256_storeu_pd(args.second + d, second);
    for (int i = 0; i < n; ++i) {
      const __m256d b = _mm256_loadu_pd(args.bids[i] + d);
      const __m256d s = _mm256_and_pd(_mm256_cmp_pd(b, first, _CMP_EQ_OQ), inv);
      _mm256_storeu_pd(args.share[i] + d, s);
      _mm256_storeu_pd(args.surplus[i] + d, _mm256_mul_pd(s, gap));
    }
  }
  if (vec_end < args.count) {
    const double* tail_bids[64];
    double* tail_share[64];
    double* tail_surplus[64];
    for (int i = 0; i < n; ++i) {
      tail_bids[i] = args.bids[i] + vec_end;
      tail_share[i] = args.share[i] + vec_end;
      tail_surplus[i] = args.surplus[i] + vec_end;
    }
    kernels_scalar::settle_block({n, args.count - vec_end, tail_bids, args.first + vec_end,
                                  args.second + vec_end, tail_share, tail_surplus});
  }
}

void convolve_masses(const ConvolveArgs& args) {
  const std::size_t vec_end = args.nb - args.nb % 4;
  for (std::size_t k = 0; k < args.na; ++k) {
    const __m256d ak = _mm256_set1_pd(args.a[k]);
    double* row = args.out + k;
    for (std::size_t l = 0; l < vec_end; l += 4) {
      const __m256d acc = _mm256_loadu_pd(row + l);
      _mm256_storeu_pd(row + l, _mm256_fmadd_pd(ak, _mm256_loadu_pd(args.b + l), acc));
    }
    for (std::size_t l = vec_end; l < args.nb; ++l) row[l] = std::fma(args.a[k], args.b[l], row[l]);
  }
}

}  // namespace awarebid::kernels_avx2
