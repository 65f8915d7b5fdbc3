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

#ifndef OCRS_LP_H_
#define OCRS_LP_H_

// Small dense simplex for the restricted LPs solved during column
// generation. Problems have at most a few hundred columns and a few dozen
// rows, so a full tableau with Bland's rule is adequate and terminates.

#include <string>
#include <vector>

namespace ocrs::lp {

enum class Sense { kLessEqual, kGreaterEqual, kEqual };

struct Constraint {
  std::vector<double> coefficients;
  Sense sense = Sense::kLessEqual;
  double rhs = 0.0;
};

// maximize objective . x  subject to constraints, x >= 0.
struct Problem {
  std::vector<double> objective;
  std::vector<Constraint> constraints;
};

enum class Status { kOptimal, kInfeasible, kUnbounded, kIterationLimit };

std::string StatusName(Status s);

struct Solution {
  Status status = Status::kInfeasible;
  double objective = 0.0;
  std::vector<double> primal;
  // One multiplier per constraint, signed for the original (unflipped)
  // rows: >= 0 for <= rows, <= 0 for >= rows, free for equalities.
  std::vector<double> duals;
  int iterations = 0;
};

struct SimplexOptions {
  double pivot_tolerance = 1e-11;
  double feasibility_tolerance = 1e-10;
  double optimality_tolerance = 1e-9;
  int max_iterations = 200000;
};

Solution Maximize(const Problem& problem, const SimplexOptions& options = {});

}  // namespace ocrs::lp

#endif  // OCRS_LP_H_
