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

#include "ocrs/lp.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "ocrs/errors.h"

namespace ocrs::lp {
namespace {

class Tableau {
 public:
  Tableau(const Problem& p, const SimplexOptions& opt) : opt_(opt) {
    rows_ = static_cast<int>(p.constraints.size());
    vars_ = static_cast<int>(p.objective.size());
    flipped_.assign(rows_, false);
    std::vector<Sense> senses(rows_);
    int slacks = 0;
    int artificials = 0;
    for (int r = 0; r < rows_; ++r) {
      const Constraint& c = p.constraints[r];
      if (static_cast<int>(c.coefficients.size()) != vars_) {
        throw InputError("LP constraint width does not match objective");
      }
      Sense s = c.sense;
      if (c.rhs < 0.0) {
        flipped_[r] = true;
        if (s == Sense::kLessEqual) {
          s = Sense::kGreaterEqual;
        } else if (s == Sense::kGreaterEqual) {
          s = Sense::kLessEqual;
        }
      }
      senses[r] = s;
      if (s != Sense::kEqual) ++slacks;
      if (s != Sense::kLessEqual) ++artificials;
    }
    first_artificial_ = vars_ + slacks;
    cols_ = vars_ + slacks + artificials;
    width_ = cols_ + 1;
    data_.assign(static_cast<std::size_t>(rows_) * width_, 0.0);
    basis_.assign(rows_, -1);
    initial_.assign(rows_, -1);

    int next_slack = vars_;
    int next_art = first_artificial_;
    for (int r = 0; r < rows_; ++r) {
      const Constraint& c = p.constraints[r];
      const double sign = flipped_[r] ? -1.0 : 1.0;
      for (int j = 0; j < vars_; ++j) at(r, j) = sign * c.coefficients[j];
      at(r, cols_) = sign * c.rhs;
      switch (senses[r]) {
        case Sense::kLessEqual:
          at(r, next_slack) = 1.0;
          initial_[r] = basis_[r] = next_slack++;
          break;
        case Sense::kGreaterEqual:
          at(r, next_slack++) = -1.0;
          at(r, next_art) = 1.0;
          initial_[r] = basis_[r] = next_art++;
          break;
        case Sense::kEqual:
          at(r, next_art) = 1.0;
          initial_[r] = basis_[r] = next_art++;
          break;
      }
    }
    cost_.assign(cols_, 0.0);
    for (int j = 0; j < vars_; ++j) cost_[j] = p.objective[j];
  }

  Solution Solve() {
    Solution sol;
    // Phase 1: maximize -sum(artificials).
    std::vector<double> phase1(cols_, 0.0);
    for (int j = first_artificial_; j < cols_; ++j) phase1[j] = -1.0;
    Status st = Run(phase1, /*allow_artificial=*/true, sol.iterations);
    if (st == Status::kIterationLimit) {
      sol.status = st;
      return sol;
    }
    if (Objective(phase1) < -opt_.feasibility_tolerance) {
      sol.status = Status::kInfeasible;
      return sol;
    }
    DriveOutArtificials();
    st = Run(cost_, /*allow_artificial=*/false, sol.iterations);
    sol.status = st;
    if (st != Status::kOptimal) return sol;

    sol.primal.assign(vars_, 0.0);
    for (int r = 0; r < rows_; ++r) {
      if (basis_[r] < vars_) sol.primal[basis_[r]] = std::max(0.0, at(r, cols_));
    }
    sol.objective = 0.0;
    for (int j = 0; j < vars_; ++j) sol.objective += cost_[j] * sol.primal[j];
    sol.duals.assign(rows_, 0.0);
    for (int r = 0; r < rows_; ++r) {
      double y = 0.0;
      for (int k = 0; k < rows_; ++k) y += cost_[basis_[k]] * at(k, initial_[r]);
      sol.duals[r] = flipped_[r] ? -y : y;
    }
    return sol;
  }

 private:
  double& at(int r, int c) { return data_[static_cast<std::size_t>(r) * width_ + c]; }

  double Objective(const std::vector<double>& cost) {
    double z = 0.0;
    for (int r = 0; r < rows_; ++r) z += cost[basis_[r]] * at(r, cols_);
    return z;
  }

  bool IsArtificial(int j) const { return j >= first_artificial_; }

  Status Run(const std::vector<double>& cost, bool allow_artificial,
             int& iterations) {
    std::vector<double> reduced(cols_);
    while (true) {
      if (iterations >= opt_.max_iterations) return Status::kIterationLimit;
      // Reduced costs d_j = c_j - c_B B^-1 A_j, read off the tableau.
      for (int j = 0; j < cols_; ++j) reduced[j] = cost[j];
      for (int r = 0; r < rows_; ++r) {
        const double cb = cost[basis_[r]];
        if (cb == 0.0) continue;
        const double* row = &data_[static_cast<std::size_t>(r) * width_];
        for (int j = 0; j < cols_; ++j) reduced[j] -= cb * row[j];
      }
      // Bland: lowest-index improving column.
      int entering = -1;
      for (int j = 0; j < cols_; ++j) {
        if (!allow_artificial && IsArtificial(j)) continue;
        if (reduced[j] > opt_.optimality_tolerance && !IsBasic(j)) {
          entering = j;
          break;
        }
      }
      if (entering < 0) return Status::kOptimal;

      int leaving = -1;
      // A zero-level artificial left in the basis leaves first so that it
      // can never become positive in phase 2.
      if (!allow_artificial) {
        for (int r = 0; r < rows_; ++r) {
          if (IsArtificial(basis_[r]) &&
              std::abs(at(r, entering)) > opt_.pivot_tolerance) {
            leaving = r;
            break;
          }
        }
      }
      if (leaving < 0) {
        double best = std::numeric_limits<double>::infinity();
        for (int r = 0; r < rows_; ++r) {
          const double a = at(r, entering);
          if (a <= opt_.pivot_tolerance) continue;
          const double ratio = std::max(0.0, at(r, cols_)) / a;
          if (leaving < 0 || ratio < best - 1e-15) {
            best = ratio;
            leaving = r;
          } else if (ratio <= best + 1e-15 && basis_[r] < basis_[leaving]) {
            best = std::min(best, ratio);
            leaving = r;
          }
        }
      }
      if (leaving < 0) return Status::kUnbounded;
      Pivot(leaving, entering);
      ++iterations;
    }
  }

  bool IsBasic(int j) const {
    for (int b : basis_) {
      if (b == j) return true;
    }
    return false;
  }

  void DriveOutArtificials() {
    for (int r = 0; r < rows_; ++r) {
      if (!IsArtificial(basis_[r])) continue;
      for (int j = 0; j < first_artificial_; ++j) {
        if (!IsBasic(j) && std::abs(at(r, j)) > opt_.pivot_tolerance) {
          Pivot(r, j);
          break;
        }
      }
    }
  }

  void Pivot(int pr, int pc) {
    double* prow = &data_[static_cast<std::size_t>(pr) * width_];
    const double inv = 1.0 / prow[pc];
    for (int j = 0; j < width_; ++j) prow[j] *= inv;
    prow[pc] = 1.0;
    for (int r = 0; r < rows_; ++r) {
      if (r == pr) continue;
      double* row = &data_[static_cast<std::size_t>(r) * width_];
      const double f = row[pc];
      if (f == 0.0) continue;
      for (int j = 0; j < width_; ++j) row[j] -= f * prow[j];
      row[pc] = 0.0;
    }
    basis_[pr] = pc;
  }

  SimplexOptions opt_;
  int rows_ = 0;
  int vars_ = 0;
  int cols_ = 0;
  int width_ = 0;
  int first_artificial_ = 0;
  std::vector<double> data_;
  std::vector<int> basis_;
  std::vector<int> initial_;
  std::vector<bool> flipped_;
  std::vector<double> cost_;
};

}  // namespace

std::string StatusName(Status s) {
  switch (s) {
    case Status::kOptimal:
      return "optimal";
    case Status::kInfeasible:
      return "infeasible";
    case Status::kUnbounded:
      return "unbounded";
    case Status::kIterationLimit:
      return "iteration_limit";
  }
  return "unknown";
}

Solution Maximize(const Problem& problem, const SimplexOptions& options) {
  Tableau t(problem, options);
  return t.Solve();
}

}  // namespace ocrs::lp
