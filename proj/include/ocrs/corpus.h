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

#ifndef OCRS_CORPUS_H_
#define OCRS_CORPUS_H_

#include <string>
#include <utility>
#include <vector>

#include "ocrs/instance.h"
#include "ocrs/matroid.h"
#include "ocrs/rng.h"

namespace ocrs {

// Graphic matroid on vertices u1 = 0, u2 = 1, v_j = 2 + j: edges
// (u1, v_j), (v_j, u2) for each hat j, then the base edge (u1, u2) last.
// x is 1/2 on hat edges and 1 on the base.
struct HatExample {
  MatroidPtr matroid;
  std::vector<double> x;
  Element base = 0;
  int hats = 0;
};

HatExample MakeHat(int hats);

// Random blocks (sizes 1..3) with capacities in [1, block size].
MatroidPtr RandomPartitionMatroid(int n, Rng& rng);
// n edges on about n/2 + 1 vertices, no loops.
MatroidPtr RandomGraphicMatroid(int n, Rng& rng);
// Column matroid of n random GF(2) vectors of dimension `dim`, stored
// explicitly (n <= 20). Zero vectors give loops.
MatroidPtr RandomBinaryMatroid(int n, int dim, Rng& rng);

// Convex combination of `sets` random bases, scaled by a factor in
// [0.5, 1]; always in the matroid polytope.
std::vector<double> RandomPolytopePoint(const Matroid& m, Rng& rng, int sets = 4);
// Nonnegative with sum(x) in [0.2, 1].
std::vector<double> RandomRank1Point(int n, Rng& rng);

BernoulliInstance RandomBernoulliInstance(MatroidPtr m, Rng& rng);
GeneralInstance RandomGeneralInstance(MatroidPtr m, Rng& rng, int max_atoms = 3);

// Canonical instances shipped in corpus/: name and file content.
std::vector<std::pair<std::string, nlohmann::json>> CanonicalCorpus();

}  // namespace ocrs

#endif  // OCRS_CORPUS_H_
