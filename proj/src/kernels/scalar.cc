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

#include <cstddef>
#include <cstdint>
#include <span>

#include "ocrs/kernels.h"

namespace ocrs::kernels {
namespace {

void PatternWeightsScalar(std::span<const double> x, std::span<double> w) {
  w[0] = 1.0;
  std::size_t len = 1;
  for (double xi : x) {
    const double keep = 1.0 - xi;
    for (std::size_t m = 0; m < len; ++m) {
      w[len + m] = w[m] * xi;
      w[m] *= keep;
    }
    len <<= 1;
  }
}

void AccumulateSelectedScalar(std::span<const double> w,
                              std::span<const std::uint64_t> selected,
                              std::span<double> q) {
  for (std::size_t i = 0; i < q.size(); ++i) {
    const std::uint64_t bit = std::uint64_t{1} << i;
    double acc = 0.0;
    for (std::size_t m = 0; m < w.size(); ++m) {
      if (selected[m] & bit) acc += w[m];
    }
    q[i] += acc;
  }
}

double DotScalar(std::span<const double> a, std::span<const double> b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

std::uint64_t BelowMaskScalar(std::span<const double> u,
                              std::span<const double> p) {
  std::uint64_t mask = 0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (u[i] < p[i]) mask |= std::uint64_t{1} << i;
  }
  return mask;
}

}  // namespace

const KernelTable& ScalarKernels() {
  static const KernelTable table{PatternWeightsScalar,
                                 AccumulateSelectedScalar, DotScalar,
                                 BelowMaskScalar};
  return table;
}

}  // namespace ocrs::kernels
