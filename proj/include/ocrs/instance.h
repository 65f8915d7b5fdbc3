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

#ifndef OCRS_INSTANCE_H_
#define OCRS_INSTANCE_H_

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "ocrs/element_set.h"
#include "ocrs/matroid.h"
#include "ocrs/rng.h"

namespace ocrs {

// Element i takes value y[i] with probability p[i], 0 otherwise.
struct BernoulliInstance {
  MatroidPtr matroid;
  std::vector<double> p;
  std::vector<double> y;

  int size() const { return matroid ? matroid->size() : 0; }
  // Throws InputError on length mismatch or out-of-range entries.
  void Validate() const;
};

struct Atom {
  double value = 0.0;
  double probability = 0.0;
};

// Finite discrete distribution; atoms are kept sorted by descending value.
class DiscreteDistribution {
 public:
  DiscreteDistribution() = default;
  // Throws InputError unless probabilities are >= 0 and sum to 1 within
  // 1e-12, values are >= 0 and distinct.
  explicit DiscreteDistribution(std::vector<Atom> atoms);

  const std::vector<Atom>& atoms() const { return atoms_; }
  double Mean() const;
  double Sample(Rng& rng) const;

 private:
  std::vector<Atom> atoms_;
};

struct GeneralInstance {
  MatroidPtr matroid;
  std::vector<DiscreteDistribution> dists;

  int size() const { return matroid ? matroid->size() : 0; }
  void Validate() const;
  std::vector<double> SampleValues(Rng& rng) const;
};

// Activation rule for the top-`mass` quantile of one element's value
// distribution. An atom straddling the boundary is split with an
// independent coin so that Pr[active] = mass exactly.
struct QuantileRule {
  Element element = 0;
  double mass = 0.0;
  double threshold = 0.0;
  double boundary_probability = 0.0;
  // E[v | active]; 0 when mass == 0.
  double conditional_value = 0.0;

  // Pr[v > threshold] + boundary_probability * Pr[v == threshold].
  double ActivationProbability(const DiscreteDistribution& dist) const;
};

QuantileRule BuildQuantileRule(const DiscreteDistribution& dist, double mass,
                               Element element = 0);
bool Activate(const QuantileRule& rule, double value, Rng& rng);

// Each element independently with probability x[i].
ElementSet SampleActiveSet(std::span<const double> x, Rng& rng);

// Either a fixed permutation, or per-element arrival times in [0, 1]. In
// both cases `sequence` lists elements in processing order.
struct ArrivalOrder {
  std::vector<Element> sequence;
  std::optional<std::vector<double>> times;

  int size() const { return static_cast<int>(sequence.size()); }
  // Arrival time of the element at `position` (NaN for fixed orders).
  double TimeAt(int position) const;
};

ArrivalOrder FixedArrival(std::vector<Element> permutation);
ArrivalOrder IdentityArrival(int n);
// Sorts by ascending time; ties break by ascending element id.
ArrivalOrder TimedArrival(std::vector<double> times);
ArrivalOrder SampleUniformArrival(int n, Rng& rng);

bool IsPermutation(std::span<const Element> order, int n);

// Instance files: {"v":1,"matroid":{...},"model":"bernoulli","p":[...],
// "y":[...]} or {"v":1,"matroid":{...},"model":"general",
// "dists":[[[value,prob],...],...]}. An optional "x" gives a fractional
// point for the contention resolution commands.
struct InstanceFile {
  std::optional<BernoulliInstance> bernoulli;
  std::optional<GeneralInstance> general;
  std::optional<std::vector<double>> x;
  MatroidPtr matroid() const;
};

InstanceFile InstanceFromJson(const nlohmann::json& j);
nlohmann::json InstanceToJson(const BernoulliInstance& inst);
nlohmann::json InstanceToJson(const GeneralInstance& inst);
InstanceFile LoadInstanceFile(const std::string& path);

}  // namespace ocrs

#endif  // OCRS_INSTANCE_H_
