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

#ifndef OCRS_KERNELS_H_
#define OCRS_KERNELS_H_

// Data-parallel inner loops used by exact enumeration and Monte Carlo.
// Each kernel has a scalar reference implementation plus SIMD variants
// (AVX2 on x86-64, NEON on AArch64). The variant is picked once at
// startup from the CPU's reported features and can be overridden for
// equivalence testing.

#include <cstdint>
#include <span>

namespace ocrs::kernels {

enum class Isa { kScalar, kAvx2, kNeon };

const char* IsaName(Isa isa);
bool IsaSupported(Isa isa);
Isa ActiveIsa();
// Returns false (and changes nothing) if the CPU lacks `isa`.
bool SetIsa(Isa isa);

// Probability of every activity pattern over n = x.size() elements:
// w[m] = prod_i (bit i of m ? x_i : 1 - x_i). Requires w.size() == 2^n.
void PatternWeights(std::span<const double> x, std::span<double> w);

// q[i] += sum_m w[m] * (bit i of selected[m]) for i < q.size() <= 64.
void AccumulateSelected(std::span<const double> w,
                        std::span<const std::uint64_t> selected,
                        std::span<double> q);

double Dot(std::span<const double> a, std::span<const double> b);

// Bit i set iff u[i] < p[i]; size <= 64.
std::uint64_t BelowMask(std::span<const double> u, std::span<const double> p);

// Per-ISA entry points, exposed for equivalence tests.
struct KernelTable {
  void (*pattern_weights)(std::span<const double>, std::span<double>);
  void (*accumulate_selected)(std::span<const double>,
                              std::span<const std::uint64_t>,
                              std::span<double>);
  double (*dot)(std::span<const double>, std::span<const double>);
  std::uint64_t (*below_mask)(std::span<const double>,
                              std::span<const double>);
};

const KernelTable& ScalarKernels();
// nullptr when the variant was not compiled in.
const KernelTable* Avx2Kernels();
const KernelTable* NeonKernels();

}  // namespace ocrs::kernels

#endif  // OCRS_KERNELS_H_
