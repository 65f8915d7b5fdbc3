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

#ifndef OCRS_LPCRS_H_
#define OCRS_LPCRS_H_

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <unordered_set>
#include <vector>

#include "json.hpp"
#include "ocrs/element_set.h"
#include "ocrs/exante.h"
#include "ocrs/matroid.h"
#include "ocrs/rng.h"
#include "ocrs/schemes.h"

namespace ocrs {

// A deterministic online rule phi(arrived, accepted, next): whether to
// select `next` if it turns out active. Implementations must only say yes
// when accepted + next is independent; RunPolicy rejects otherwise.
class Policy {
 public:
  virtual ~Policy() = default;
  virtual std::string kind() const = 0;
  virtual bool Decide(const ElementSet& arrived, const ElementSet& accepted,
                      Element next) const = 0;
  virtual nlohmann::json ToJson() const = 0;
};

using PolicyPtr = std::shared_ptr<const Policy>;

// Prophet-algorithm thresholds on the Bernoulli instance "value y_i with
// probability x_i". The multiplier is a constant, or a per-position
// schedule indexed by the number of elements that arrived before.
class ThresholdPolicy : public Policy {
 public:
  ThresholdPolicy(std::shared_ptr<const BasePriceOracle> prices,
                  ExAnteSolution solution, std::vector<double> schedule);

  std::string kind() const override { return "threshold"; }
  bool Decide(const ElementSet& arrived, const ElementSet& accepted,
              Element next) const override;
  nlohmann::json ToJson() const override;

  double Multiplier(int arrived_count) const;
  const std::vector<double>& schedule() const { return schedule_; }

 private:
  std::shared_ptr<const BasePriceOracle> prices_;
  ExAnteSolution solution_;
  std::vector<double> schedule_;  // one entry means constant
};

// Explicit table of the (arrived, accepted, next) states that accept.
// Ground sets of at most 64 elements.
class TablePolicy : public Policy {
 public:
  struct Key {
    std::uint64_t arrived;
    std::uint64_t accepted;
    int next;
    friend bool operator==(const Key&, const Key&) = default;
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const;
  };

  TablePolicy(MatroidPtr matroid, std::string label);
  std::string kind() const override { return "table"; }
  bool Decide(const ElementSet& arrived, const ElementSet& accepted,
              Element next) const override;
  nlohmann::json ToJson() const override;

  void Add(const ElementSet& arrived, const ElementSet& accepted, Element next);
  std::size_t entries() const { return table_.size(); }

 private:
  MatroidPtr matroid_;
  std::string label_;
  std::unordered_set<Key, KeyHash> table_;
};

// The best deterministic policy for weights y: dynamic programming over
// (arrived, accepted) states. Fixed mode uses `order`; random mode
// averages over uniformly random orders.
PolicyPtr OptimalPolicy(MatroidPtr m, std::span<const double> x,
                        std::span<const double> y, ArrivalMode mode,
                        std::span<const Element> order);

// Runs phi on one activity pattern; returns the selected set.
ElementSet RunPolicy(const Policy& policy, const Matroid& m,
                     std::span<const Element> order, const ElementSet& active);
SelectionTrace RunPolicyTrace(const Policy& policy, const Matroid& m,
                              const ArrivalOrder& arrival,
                              const ElementSet& active);

struct ExactQOptions {
  int fixed_cap = 14;
  int random_cap = 7;
  // Above the cap: sample this many orders (random mode) instead of
  // refusing. 0 refuses.
  int sampled_orders = 0;
  std::uint64_t seed = 0;
  int workers = 1;
};

struct QResult {
  std::vector<double> q;
  std::vector<double> standard_error;  // zeros when exact
  bool exact = true;
  // Digest of every decision taken during the evaluation.
  std::uint64_t fingerprint = 0;
};

// Pr[i selected] when phi runs on R(x). Fixed mode enumerates all 2^n
// activity patterns along `order`; random mode also averages over all n!
// orders (by dynamic programming over reachable states).
QResult ExactQ(const Policy& policy, const Matroid& m,
               std::span<const double> x, ArrivalMode mode,
               std::span<const Element> order,
               const ExactQOptions& options = {});

struct SeparationOptions {
  ExactQOptions q;
  // Random mode: extra sampled time schedules tried besides the fixed
  // candidates.
  int sampled_schedules = 16;
  // Use the dynamic-programming optimum instead of the threshold policy.
  bool optimal = false;
  // Fall back to the optimum when the threshold policy falls short of the
  // guarantee.
  bool fallback_to_optimal = true;
};

struct SeparationResult {
  PolicyPtr policy;
  QResult q;
  double value = 0.0;
  bool used_fallback = false;
};

// `y` must satisfy sum x_i y_i = 1.
SeparationResult SeparationOracle(std::span<const double> y, MatroidPtr m,
                                  std::span<const double> x, ArrivalMode mode,
                                  std::span<const Element> order,
                                  const SeparationOptions& options = {});

struct BuildOptions {
  double epsilon = 1e-6;
  // Keep adding policies until none improves, instead of stopping at the
  // target.
  bool to_optimality = false;
  int max_iterations = 200;
  double improvement_tolerance = 1e-9;
  SeparationOptions separation;
};

// A convex combination of deterministic policies.
struct RandomizedCrs {
  MatroidPtr matroid;
  std::vector<double> x;
  ArrivalMode mode = ArrivalMode::kFixed;
  std::vector<Element> order;  // fixed mode
  std::vector<PolicyPtr> policies;
  std::vector<double> weights;
  std::vector<std::vector<double>> q;  // per policy
  double c = 0.0;
  std::vector<double> history;  // restricted LP value per iteration
  int fallbacks = 0;

  std::vector<double> MixtureQ() const;
  nlohmann::json ToJson() const;
};

// 1/2 for fixed orders, 1 - 1/e for random ones.
double TargetConstant(ArrivalMode mode);

RandomizedCrs BuildRandomizedCrs(MatroidPtr m, std::span<const double> x,
                                 ArrivalMode mode,
                                 std::span<const Element> order,
                                 double target, const BuildOptions& options = {});

struct MixtureCheck {
  std::vector<double> q;
  double min_ratio = 0.0;  // min over x_i > 0 of q_i / x_i
  bool ok = false;         // q_i >= c x_i - tolerance for all i
};

// Recomputes every policy's q from scratch.
MixtureCheck VerifyMixture(const RandomizedCrs& scheme, double tolerance = 1e-8,
                           const ExactQOptions& options = {});

// Samples a policy by weight and runs it. Throws MismatchError if `mode`
// differs from the scheme's.
SelectionTrace ExecuteRandomizedCrs(const RandomizedCrs& scheme,
                                    ArrivalMode mode,
                                    const ArrivalOrder& arrival,
                                    const ElementSet& active, Rng& rng);

SchemePtr MakeRandomizedCrsScheme(std::shared_ptr<const RandomizedCrs> scheme);

struct WorstOrderResult {
  double c = 0.0;
  std::vector<Element> order;
  int orders = 0;
};

// Builds a fixed-order scheme for every permutation (n <= 6) and returns
// the smallest certified constant.
WorstOrderResult BuildWorstOrder(MatroidPtr m, std::span<const double> x,
                                 const BuildOptions& options = {});

}  // namespace ocrs

#endif  // OCRS_LPCRS_H_
