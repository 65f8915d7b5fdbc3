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

#ifndef OCRS_TESTS_ORACLES_H_
#define OCRS_TESTS_ORACLES_H_

// Reference computations used only by tests. They work from the
// independence oracle alone and enumerate everything.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <vector>

#include "ocrs/element_set.h"
#include "ocrs/matroid.h"

namespace ocrs::testing {

inline int BruteRank(const Matroid& m, std::uint64_t mask) {
  int best = 0;
  const int n = m.size();
  for (std::uint64_t s = mask;; s = (s - 1) & mask) {
    const int size = __builtin_popcountll(s);
    if (size > best && m.IsIndependent(ElementSet::FromMask(n, s))) best = size;
    if (s == 0) break;
  }
  return best;
}

// max over independent S disjoint from A with S + A's rank additive, of
// w(S); i.e. the max-weight independent set of the contraction M/A.
inline double BruteContractedMax(const Matroid& m, std::uint64_t a,
                                 const std::vector<double>& w) {
  const int n = m.size();
  const int ra = BruteRank(m, a);
  double best = 0.0;
  for (std::uint64_t s = 0; s < (1ull << n); ++s) {
    if (s & a) continue;
    if (BruteRank(m, s | a) != __builtin_popcountll(s) + ra) continue;
    double v = 0.0;
    for (int i = 0; i < n; ++i) {
      if ((s >> i) & 1) v += w[i];
    }
    best = std::max(best, v);
  }
  return best;
}

// Forest test by union-find, independent of the library.
inline bool IsForest(int vertices, const std::vector<std::pair<int, int>>& edges,
                     std::uint64_t mask) {
  std::vector<int> parent(vertices);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  for (std::size_t e = 0; e < edges.size(); ++e) {
    if (!((mask >> e) & 1)) continue;
    const int a = find(edges[e].first);
    const int b = find(edges[e].second);
    if (a == b) return false;
    parent[a] = b;
  }
  return true;
}

inline double PatternProbability(const std::vector<double>& p, std::uint64_t mask) {
  double w = 1.0;
  for (std::size_t i = 0; i < p.size(); ++i) w *= ((mask >> i) & 1) ? p[i] : 1.0 - p[i];
  return w;
}

}  // namespace ocrs::testing

#endif  // OCRS_TESTS_ORACLES_H_
