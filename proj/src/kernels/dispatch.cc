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

#include <atomic>
#include <cstdint>
#include <span>

#include "ocrs/kernels.h"

namespace ocrs::kernels {

#if !defined(OCRS_HAVE_AVX2)
const KernelTable* Avx2Kernels() { return nullptr; }
#endif
#if !defined(OCRS_HAVE_NEON)
const KernelTable* NeonKernels() { return nullptr; }
#endif

namespace {

const KernelTable* TableFor(Isa isa) {
  switch (isa) {
    case Isa::kScalar:
      return &ScalarKernels();
    case Isa::kAvx2:
      return Avx2Kernels();
    case Isa::kNeon:
      return NeonKernels();
  }
  return nullptr;
}

Isa DetectIsa() {
  if (IsaSupported(Isa::kAvx2)) return Isa::kAvx2;
  if (IsaSupported(Isa::kNeon)) return Isa::kNeon;
  return Isa::kScalar;
}

std::atomic<Isa>& Selected() {
  static std::atomic<Isa> isa{DetectIsa()};
  return isa;
}

const KernelTable& Current() { return *TableFor(Selected().load()); }

}  // namespace

const char* IsaName(Isa isa) {
  switch (isa) {
    case Isa::kScalar:
      return "scalar";
    case Isa::kAvx2:
      return "avx2";
    case Isa::kNeon:
      return "neon";
  }
  return "unknown";
}

bool IsaSupported(Isa isa) {
  switch (isa) {
    case Isa::kScalar:
      return true;
    case Isa::kAvx2:
#if defined(OCRS_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
    case Isa::kNeon:
#if defined(OCRS_HAVE_NEON)
      return true;  // mandatory on AArch64
#else
      return false;
#endif
  }
  return false;
}

Isa ActiveIsa() { return Selected().load(); }

bool SetIsa(Isa isa) {
  if (!IsaSupported(isa)) return false;
  Selected().store(isa);
  return true;
}

void PatternWeights(std::span<const double> x, std::span<double> w) {
  Current().pattern_weights(x, w);
}

void AccumulateSelected(std::span<const double> w,
                        std::span<const std::uint64_t> selected,
                        std::span<double> q) {
  Current().accumulate_selected(w, selected, q);
}

double Dot(std::span<const double> a, std::span<const double> b) {
  return Current().dot(a, b);
}

std::uint64_t BelowMask(std::span<const double> u, std::span<const double> p) {
  return Current().below_mask(u, p);
}

}  // namespace ocrs::kernels
