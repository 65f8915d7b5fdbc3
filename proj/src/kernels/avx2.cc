// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Compiled with -mavx2; only reached after a runtime CPU check.

#include <immintrin.h>

#include <cstddef>
#include <cstdint>
#include <span>

#include "ocrs/kernels.h"

namespace ocrs::kernels {
namespace {

double HorizontalSum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  __m128d shuf = _mm_unpackhi_pd(lo, lo);
  return _mm_cvtsd_f64(_mm_add_sd(lo, shuf));
}

void PatternWeightsAvx2(std::span<const double> x, std::span<double> w) {
  w[0] = 1.0;
  std::size_t len = 1;
  double* out = w.data();
  for (double xi : x) {
    const double keep = 1.0 - xi;
    std::size_t m = 0;
    if (len >= 4) {
      const __m256d vx = _mm256_set1_pd(xi);
      const __m256d vk = _mm256_set1_pd(keep);
      for (; m + 4 <= len; m += 4) {
        __m256d base = _mm256_loadu_pd(out + m);
        _mm256_storeu_pd(out + len + m, _mm256_mul_pd(base, vx));
        _mm256_storeu_pd(out + m, _mm256_mul_pd(base, vk));
      }
    }
    for (; m < len; ++m) {
      out[len + m] = out[m] * xi;
      out[m] *= keep;
    }
    len <<= 1;
  }
}

void AccumulateSelectedAvx2(std::span<const double> w,
                            std::span<const std::uint64_t> selected,
                            std::span<double> q) {
  const std::size_t count = w.size();
  for (std::size_t i = 0; i < q.size(); ++i) {
    const std::uint64_t bit = std::uint64_t{1} << i;
    const __m256i vbit = _mm256_set1_epi64x(static_cast<long long>(bit));
    __m256d acc = _mm256_setzero_pd();
    std::size_t m = 0;
    for (; m + 4 <= count; m += 4) {
      __m256i sel = _mm256_loadu_si256(
          reinterpret_cast<const __m256i*>(selected.data() + m));
      __m256i hit = _mm256_cmpeq_epi64(_mm256_and_si256(sel, vbit), vbit);
      __m256d wv = _mm256_loadu_pd(w.data() + m);
      acc = _mm256_add_pd(acc, _mm256_and_pd(wv, _mm256_castsi256_pd(hit)));
    }
    double tail = 0.0;
    for (; m < count; ++m) {
      if (selected[m] & bit) tail += w[m];
    }
    q[i] += HorizontalSum(acc) + tail;
  }
}

double DotAvx2(std::span<const double> a, std::span<const double> b) {
  const std::size_t n = a.size();
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_loadu_pd(a.data() + i),
                                           _mm256_loadu_pd(b.data() + i)));
  }
  double tail = 0.0;
  for (; i < n; ++i) tail += a[i] * b[i];
  return HorizontalSum(acc) + tail;
}

std::uint64_t BelowMaskAvx2(std::span<const double> u,
                            std::span<const double> p) {
  const std::size_t n = u.size();
  std::uint64_t mask = 0;
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d lt = _mm256_cmp_pd(_mm256_loadu_pd(u.data() + i),
                               _mm256_loadu_pd(p.data() + i), _CMP_LT_OQ);
    mask |= static_cast<std::uint64_t>(_mm256_movemask_pd(lt)) << i;
  }
  for (; i < n; ++i) {
    if (u[i] < p[i]) mask |= std::uint64_t{1} << i;
  }
  return mask;
}

}  // namespace

const KernelTable* Avx2Kernels() {
  static const KernelTable table{PatternWeightsAvx2, AccumulateSelectedAvx2,
                                 DotAvx2, BelowMaskAvx2};
  return &table;
}

}  // namespace ocrs::kernels
