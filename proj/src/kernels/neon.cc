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

#include <arm_neon.h>

#include <cstddef>
#include <cstdint>
#include <span>

#include "ocrs/kernels.h"

namespace ocrs::kernels {
namespace {

void PatternWeightsNeon(std::span<const double> x, std::span<double> w) {
  w[0] = 1.0;
  std::size_t len = 1;
  double* out = w.data();
  for (double xi : x) {
    const double keep = 1.0 - xi;
    std::size_t m = 0;
    if (len >= 2) {
      const float64x2_t vx = vdupq_n_f64(xi);
      const float64x2_t vk = vdupq_n_f64(keep);
      for (; m + 2 <= len; m += 2) {
        float64x2_t base = vld1q_f64(out + m);
        vst1q_f64(out + len + m, vmulq_f64(base, vx));
        vst1q_f64(out + m, vmulq_f64(base, vk));
      }
    }
    for (; m < len; ++m) {
      out[len + m] = out[m] * xi;
      out[m] *= keep;
    }
    len <<= 1;
  }
}

void AccumulateSelectedNeon(std::span<const double> w,
                            std::span<const std::uint64_t> selected,
                            std::span<double> q) {
  const std::size_t count = w.size();
  for (std::size_t i = 0; i < q.size(); ++i) {
    const std::uint64_t bit = std::uint64_t{1} << i;
    const uint64x2_t vbit = vdupq_n_u64(bit);
    float64x2_t acc = vdupq_n_f64(0.0);
    std::size_t m = 0;
    for (; m + 2 <= count; m += 2) {
      uint64x2_t hit = vtstq_u64(vld1q_u64(selected.data() + m), vbit);
      float64x2_t wv = vld1q_f64(w.data() + m);
      acc = vaddq_f64(acc, vreinterpretq_f64_u64(
                               vandq_u64(vreinterpretq_u64_f64(wv), hit)));
    }
    double tail = 0.0;
    for (; m < count; ++m) {
      if (selected[m] & bit) tail += w[m];
    }
    q[i] += vaddvq_f64(acc) + tail;
  }
}

double DotNeon(std::span<const double> a, std::span<const double> b) {
  const std::size_t n = a.size();
  float64x2_t acc = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    acc = vfmaq_f64(acc, vld1q_f64(a.data() + i), vld1q_f64(b.data() + i));
  }
  double tail = 0.0;
  for (; i < n; ++i) tail += a[i] * b[i];
  return vaddvq_f64(acc) + tail;
}

std::uint64_t BelowMaskNeon(std::span<const double> u,
                            std::span<const double> p) {
  const std::size_t n = u.size();
  std::uint64_t mask = 0;
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    uint64x2_t lt = vcltq_f64(vld1q_f64(u.data() + i), vld1q_f64(p.data() + i));
    mask |= (vgetq_lane_u64(lt, 0) & 1u) << i;
    mask |= (vgetq_lane_u64(lt, 1) & 1u) << (i + 1);
  }
  for (; i < n; ++i) {
    if (u[i] < p[i]) mask |= std::uint64_t{1} << i;
  }
  return mask;
}

}  // namespace

const KernelTable* NeonKernels() {
  static const KernelTable table{PatternWeightsNeon, AccumulateSelectedNeon,
                                 DotNeon, BelowMaskNeon};
  return &table;
}

}  // namespace ocrs::kernels
