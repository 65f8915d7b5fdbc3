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

#ifndef OCRS_EXANTE_H_
#define OCRS_EXANTE_H_

#include <memory>
#include <mutex>
#include <shared_mutex>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "json.hpp"
#include "ocrs/element_set.h"
#include "ocrs/instance.h"
#include "ocrs/matroid.h"
#include "ocrs/rng.h"

namespace ocrs {

// Optimum of the ex-ante relaxation: x in the matroid polytope (and x <= p
// for Bernoulli instances), y[i] = E[v_i | v_i in its top x_i quantile].
struct ExAnteSolution {
  std::vector<double> x;
  std::vector<double> y;
  double objective = 0.0;
};

// Convex combination of independent sets with marginals x.
struct Decomposition {
  std::vector<ElementSet> sets;
  std::vector<double> weights;

  std::vector<double> Marginals(int n) const;
};

// An item of the polymatroid greedy: up to `cap` units of `owner` at
// `value` per unit. Several items may share an owner (one per atom of a
// discrete distribution); their total is what enters the matroid
// polytope.
struct CappedItem {
  Element owner = 0;
  double cap = 0.0;
  double value = 0.0;
};

// Greedy over the matroid polytope intersected with the item boxes:
// items in descending value (ties by owner, then input order) each take
// the largest amount that keeps the owner totals in the polytope. Returns
// the amount per item, in input order. Exact for matroids.
std::vector<double> PolymatroidGreedy(const Matroid& m,
                                      std::span<const CappedItem> items);

// max over subsets S of x(S) - rank(S), by enumeration (n <= 20).
double MatroidPolytopeViolation(const Matroid& m, std::span<const double> x);

ExAnteSolution SolveExAnte(const BernoulliInstance& inst);

struct GeneralExAnte {
  ExAnteSolution solution;
  std::vector<QuantileRule> rules;
  // Element i takes y_i with probability x_i.
  BernoulliInstance reduced;
};

// Ex-ante relaxation of a discrete-valued instance, solved exactly by
// running the greedy over (element, atom) items, followed by the
// top-quantile reduction to a Bernoulli instance.
GeneralExAnte SolveExAnte(const GeneralInstance& inst);

struct DecomposeOptions {
  double pricing_tolerance = 1e-9;
  double marginal_tolerance = 1e-8;
  // 0 means 50 * n.
  int max_columns = 0;
};

// Writes x as a convex combination of independent sets by column
// generation; columns are priced by the max-weight greedy. Throws
// InfeasibleError when x is provably outside the polytope and
// ConvergenceError when the column cap is hit.
Decomposition Decompose(std::span<const double> x, const Matroid& m,
                        const DecomposeOptions& options = {});

// Index j with probability weights[j].
std::size_t SampleSetIndex(const Decomposition& dec, Rng& rng);
// v-hat: y on a sampled set, zero elsewhere.
std::vector<double> SampleCorrelated(const Decomposition& dec,
                                     std::span<const double> y, Rng& rng);
std::vector<double> CorrelatedValues(const ElementSet& support,
                                     std::span<const double> y);

// Value of the greedy max-weight independent set of M/A under `values`.
double RemainingValue(const Matroid& m, const ElementSet& accepted,
                      std::span<const double> values);

// Exact base prices b_i(A) = sum_j lambda_j [R(A, v^j) - R(A + i, v^j)],
// memoized by accepted set. Thread-safe.
class BasePriceOracle {
 public:
  BasePriceOracle(MatroidPtr matroid, Decomposition dec,
                  std::vector<double> y);

  // One price per element; elements of `accepted` get 0.
  const std::vector<double>& Prices(const ElementSet& accepted) const;
  double Price(const ElementSet& accepted, Element i) const {
    return Prices(accepted)[i];
  }

  // Threshold terms b_i(A, v) for one fixed value vector.
  static std::vector<double> FixedValueThresholds(
      const Matroid& m, const ElementSet& accepted,
      std::span<const double> values);

  const Matroid& matroid() const { return *matroid_; }
  const Decomposition& decomposition() const { return dec_; }
  std::size_t memo_size() const;

 private:
  std::vector<double> Compute(const ElementSet& accepted) const;

  MatroidPtr matroid_;
  Decomposition dec_;
  std::vector<double> y_;
  mutable std::shared_mutex mu_;
  mutable std::unordered_map<ElementSet, std::vector<double>, ElementSetHash>
      memo_;
};

struct EstimatedPrices {
  std::vector<double> mean;
  std::vector<double> standard_error;
  int samples = 0;
};

EstimatedPrices EstimateBasePrices(const Matroid& m, const ElementSet& accepted,
                                   const Decomposition& dec,
                                   std::span<const double> y, int samples,
                                   Rng& rng);

nlohmann::json ExAnteToJson(const ExAnteSolution& sol,
                            const Decomposition& dec);
void ExAnteFromJson(const nlohmann::json& j, int n, ExAnteSolution& sol,
                    Decomposition& dec);

// Stable 64-bit FNV-1a digest of the compact JSON dump, as hex.
std::string ContentHash(const nlohmann::json& j);

}  // namespace ocrs

#endif  // OCRS_EXANTE_H_
