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

#ifndef OCRS_SCHEMES_H_
#define OCRS_SCHEMES_H_

#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "ocrs/element_set.h"
#include "ocrs/exante.h"
#include "ocrs/instance.h"
#include "ocrs/matroid.h"
#include "ocrs/rng.h"

namespace ocrs {

enum class ArrivalMode { kFixed, kRandom };
std::string ArrivalModeName(ArrivalMode mode);

struct TraceStep {
  Element element = 0;
  int position = 0;
  double time = 0.0;  // NaN under a fixed order
  bool active = false;
  double value = 0.0;
  std::optional<double> threshold;
  bool accepted = false;
};

struct SelectionTrace {
  std::vector<Element> accepted;  // in acceptance order
  std::vector<TraceStep> steps;   // in arrival order
  double revenue = 0.0;
  double utility = 0.0;
  double total = 0.0;

  ElementSet AcceptedSet(int n) const;
  nlohmann::json ToJson() const;
};

// alpha(t) = 1 - e^(t - 1).
double ExponentialAlpha(double t);
inline constexpr double kHalf = 0.5;

// Threshold rule shared by both prophet algorithms: element i arriving at
// position k (time t) is accepted iff it is active, y_i > alpha(k, t) *
// b_i(A) and A + i is independent; ties reject.
using AlphaSchedule = std::function<double(int position, double time)>;

SelectionTrace RunThreshold(const BasePriceOracle& prices,
                            std::span<const double> y,
                            const ArrivalOrder& arrival,
                            const ElementSet& active,
                            const AlphaSchedule& alpha);

// The two prophet algorithms over an ex-ante solution and its
// decomposition. Base prices are memoized across runs.
class ProphetAlgorithm {
 public:
  ProphetAlgorithm(MatroidPtr matroid, ExAnteSolution solution,
                   Decomposition dec);

  // alpha = 1/2 against a fixed order.
  SelectionTrace RunAdversarial(const ArrivalOrder& arrival,
                                const ElementSet& active) const;
  // alpha(t) = 1 - e^(t-1); `arrival` must carry times.
  SelectionTrace RunRandomOrder(const ArrivalOrder& arrival,
                                const ElementSet& active) const;

  const ExAnteSolution& solution() const { return solution_; }
  const BasePriceOracle& prices() const { return *prices_; }
  const Matroid& matroid() const { return *matroid_; }

 private:
  MatroidPtr matroid_;
  ExAnteSolution solution_;
  std::shared_ptr<BasePriceOracle> prices_;
};

// Solves the ex-ante relaxation and decomposes it.
ProphetAlgorithm MakeProphetAlgorithm(const BernoulliInstance& inst);

// Reach and consideration probabilities of the rank-1 scheme, indexed by
// arrival position; reach has n + 1 entries.
struct MagicianState {
  double alpha = kHalf;
  std::vector<double> reach;
  std::vector<double> consider;
};

// Throws MismatchError when some consideration probability exceeds 1.
MagicianState BuildMagician(std::span<const double> x,
                            std::span<const Element> order,
                            double alpha = kHalf);

SelectionTrace RunRank1Ocrs(std::span<const double> x,
                            const ArrivalOrder& arrival,
                            const ElementSet& active, Rng& rng);
SelectionTrace RunRank1Rcrs(std::span<const double> x,
                            const ArrivalOrder& arrival,
                            const ElementSet& active, Rng& rng);
SelectionTrace RunQuarterBaseline(std::span<const double> x,
                                  const ArrivalOrder& arrival,
                                  const ElementSet& active, Rng& rng);

// Exact Pr[i selected] of the exponential rank-1 scheme under uniform
// arrival times: x_i (1 - e^-X) / X with X = sum(x).
std::vector<double> Rank1RcrsSelection(std::span<const double> x);

// Throws MismatchError unless sum(x) <= 1 (+1e-9) and 0 <= x <= 1.
void CheckRank1Point(std::span<const double> x);

// An online scheme driven by a revealed activity set.
class OnlineScheme {
 public:
  virtual ~OnlineScheme() = default;
  virtual std::string name() const = 0;
  virtual ArrivalMode mode() const = 0;
  virtual int size() const = 0;
  virtual SelectionTrace Run(const ArrivalOrder& arrival,
                             const ElementSet& active, Rng& rng) const = 0;
  // Pr[i selected | arrival, active] with internal coins integrated out.
  virtual std::optional<std::vector<double>> SelectionProbabilities(
      const ArrivalOrder& /*arrival*/, const ElementSet& /*active*/) const {
    return std::nullopt;
  }
  // Pr[i selected] averaged over activity, coins and arrival times, when a
  // closed form is known.
  virtual std::optional<std::vector<double>> ClosedFormSelection() const {
    return std::nullopt;
  }
  // No internal coins.
  virtual bool deterministic() const { return false; }
  // Behavior depends on the arrival permutation only, not on times.
  virtual bool order_only() const { return true; }
};

using SchemePtr = std::shared_ptr<const OnlineScheme>;

SchemePtr MakeThresholdScheme(std::shared_ptr<const ProphetAlgorithm> alg,
                              ArrivalMode mode);
SchemePtr MakeMagicianScheme(std::vector<double> x);
SchemePtr MakeExponentialRcrsScheme(std::vector<double> x);
SchemePtr MakeQuarterScheme(std::vector<double> x);
// Accepts every active element that keeps the accepted set independent.
SchemePtr MakeGreedyScheme(MatroidPtr matroid);
SchemePtr MakeNeverScheme(int n);

}  // namespace ocrs

#endif  // OCRS_SCHEMES_H_
