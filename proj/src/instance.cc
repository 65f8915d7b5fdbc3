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

#include "ocrs/instance.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <sstream>

#include "ocrs/errors.h"
#include "ocrs/kernels.h"

namespace ocrs {

void BernoulliInstance::Validate() const {
  if (!matroid) throw InputError("instance has no matroid");
  const std::size_t n = matroid->size();
  if (p.size() != n || y.size() != n) {
    throw InputError("instance vectors must have one entry per element");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!(p[i] >= 0.0 && p[i] <= 1.0)) {
      throw InputError("activation probability p[" + std::to_string(i) +
                       "] outside [0, 1]");
    }
    if (!(y[i] >= 0.0) || !std::isfinite(y[i])) {
      throw InputError("value y[" + std::to_string(i) + "] must be >= 0");
    }
  }
}

DiscreteDistribution::DiscreteDistribution(std::vector<Atom> atoms)
    : atoms_(std::move(atoms)) {
  if (atoms_.empty()) throw InputError("distribution has no atoms");
  double total = 0.0;
  for (const Atom& a : atoms_) {
    if (!(a.value >= 0.0) || !std::isfinite(a.value)) {
      throw InputError("distribution values must be finite and >= 0");
    }
    if (!(a.probability >= 0.0)) {
      throw InputError("distribution probabilities must be >= 0");
    }
    total += a.probability;
  }
  if (std::abs(total - 1.0) > 1e-12) {
    throw InputError("distribution probabilities sum to " +
                     std::to_string(total) + ", expected 1");
  }
  std::sort(atoms_.begin(), atoms_.end(),
            [](const Atom& a, const Atom& b) { return a.value > b.value; });
  for (std::size_t k = 1; k < atoms_.size(); ++k) {
    if (atoms_[k].value == atoms_[k - 1].value) {
      throw InputError("distribution values must be distinct");
    }
  }
}

double DiscreteDistribution::Mean() const {
  double m = 0.0;
  for (const Atom& a : atoms_) m += a.value * a.probability;
  return m;
}

double DiscreteDistribution::Sample(Rng& rng) const {
  double u = rng.uniform();
  for (const Atom& a : atoms_) {
    if (u < a.probability) return a.value;
    u -= a.probability;
  }
  // Rounding left a sliver of mass; give it to the last positive atom.
  for (auto it = atoms_.rbegin(); it != atoms_.rend(); ++it) {
    if (it->probability > 0.0) return it->value;
  }
  return atoms_.back().value;
}

void GeneralInstance::Validate() const {
  if (!matroid) throw InputError("instance has no matroid");
  if (static_cast<int>(dists.size()) != matroid->size()) {
    throw InputError("instance needs one distribution per element");
  }
}

std::vector<double> GeneralInstance::SampleValues(Rng& rng) const {
  std::vector<double> v(dists.size());
  for (std::size_t i = 0; i < dists.size(); ++i) v[i] = dists[i].Sample(rng);
  return v;
}

double QuantileRule::ActivationProbability(
    const DiscreteDistribution& dist) const {
  double prob = 0.0;
  for (const Atom& a : dist.atoms()) {
    if (a.value > threshold) {
      prob += a.probability;
    } else if (a.value == threshold) {
      prob += boundary_probability * a.probability;
    }
  }
  return prob;
}

QuantileRule BuildQuantileRule(const DiscreteDistribution& dist, double mass,
                               Element element) {
  if (!(mass >= 0.0 && mass <= 1.0)) {
    throw InputError("quantile mass must lie in [0, 1]");
  }
  const auto& atoms = dist.atoms();
  if (atoms.empty()) throw InputError("distribution has no atoms");
  QuantileRule rule;
  rule.element = element;
  rule.mass = mass;
  constexpr double kSlack = 1e-12;
  double above = 0.0;       // mass strictly above the current atom
  double value_above = 0.0;  // sum of value * mass over those atoms
  std::size_t k = 0;
  // First atom whose inclusion would overshoot `mass`.
  for (; k < atoms.size(); ++k) {
    if (above + atoms[k].probability > mass + kSlack) break;
    above += atoms[k].probability;
    value_above += atoms[k].value * atoms[k].probability;
  }
  if (k == atoms.size()) {
    // The whole support fits: take everything.
    rule.threshold = atoms.back().value;
    rule.boundary_probability = 1.0;
  } else {
    rule.threshold = atoms[k].value;
    const double rest = std::max(0.0, mass - above);
    rule.boundary_probability =
        std::clamp(rest / atoms[k].probability, 0.0, 1.0);
    value_above += rule.boundary_probability * atoms[k].probability *
                   atoms[k].value;
  }
  rule.conditional_value = mass > 0.0 ? value_above / mass : 0.0;
  return rule;
}

bool Activate(const QuantileRule& rule, double value, Rng& rng) {
  if (value > rule.threshold) return true;
  if (value < rule.threshold) return false;
  return rng.bernoulli(rule.boundary_probability);
}

ElementSet SampleActiveSet(std::span<const double> x, Rng& rng) {
  const int n = static_cast<int>(x.size());
  for (double xi : x) {
    if (!(xi >= 0.0 && xi <= 1.0)) {
      throw InputError("activation probabilities must lie in [0, 1]");
    }
  }
  ElementSet active(n);
  if (n <= 64) {
    std::array<double, 64> u;
    for (int i = 0; i < n; ++i) u[i] = rng.uniform();
    return ElementSet::FromMask(
        n, kernels::BelowMask(std::span<const double>(u.data(), n), x));
  }
  for (int i = 0; i < n; ++i) {
    if (rng.uniform() < x[i]) active.insert(i);
  }
  return active;
}

double ArrivalOrder::TimeAt(int position) const {
  if (!times) return std::numeric_limits<double>::quiet_NaN();
  return (*times)[sequence[position]];
}

bool IsPermutation(std::span<const Element> order, int n) {
  if (static_cast<int>(order.size()) != n) return false;
  std::vector<bool> seen(n, false);
  for (Element e : order) {
    if (e < 0 || e >= n || seen[e]) return false;
    seen[e] = true;
  }
  return true;
}

ArrivalOrder FixedArrival(std::vector<Element> permutation) {
  const int n = static_cast<int>(permutation.size());
  if (!IsPermutation(permutation, n)) {
    throw InputError("arrival order is not a permutation of 0.." +
                     std::to_string(n - 1));
  }
  return ArrivalOrder{std::move(permutation), std::nullopt};
}

ArrivalOrder IdentityArrival(int n) {
  std::vector<Element> seq(n);
  std::iota(seq.begin(), seq.end(), 0);
  return ArrivalOrder{std::move(seq), std::nullopt};
}

ArrivalOrder TimedArrival(std::vector<double> times) {
  for (double t : times) {
    if (!(t >= 0.0 && t <= 1.0)) {
      throw InputError("arrival times must lie in [0, 1]");
    }
  }
  std::vector<Element> seq(times.size());
  std::iota(seq.begin(), seq.end(), 0);
  std::stable_sort(seq.begin(), seq.end(), [&](Element a, Element b) {
    return times[a] < times[b];
  });
  return ArrivalOrder{std::move(seq), std::move(times)};
}

ArrivalOrder SampleUniformArrival(int n, Rng& rng) {
  if (n < 0) throw InputError("negative element count");
  std::vector<double> times(n);
  for (double& t : times) t = rng.uniform();
  return TimedArrival(std::move(times));
}

// --- JSON ------------------------------------------------------------------

MatroidPtr InstanceFile::matroid() const {
  if (bernoulli) return bernoulli->matroid;
  if (general) return general->matroid;
  return nullptr;
}

InstanceFile InstanceFromJson(const nlohmann::json& j) {
  InstanceFile file;
  try {
    if (j.contains("v") && j.at("v").get<int>() != 1) {
      throw InputError("unsupported instance schema version");
    }
    MatroidPtr m = MatroidFromJson(j.at("matroid"));
    const std::string model = j.value("model", std::string("bernoulli"));
    if (model == "bernoulli") {
      BernoulliInstance inst;
      inst.matroid = m;
      inst.p = j.at("p").get<std::vector<double>>();
      inst.y = j.at("y").get<std::vector<double>>();
      inst.Validate();
      file.bernoulli = std::move(inst);
    } else if (model == "general") {
      GeneralInstance inst;
      inst.matroid = m;
      for (const auto& d : j.at("dists")) {
        std::vector<Atom> atoms;
        for (const auto& a : d) {
          if (!a.is_array() || a.size() != 2) {
            throw InputError("atoms must be [value, probability] pairs");
          }
          atoms.push_back({a[0].get<double>(), a[1].get<double>()});
        }
        inst.dists.emplace_back(std::move(atoms));
      }
      inst.Validate();
      file.general = std::move(inst);
    } else {
      throw InputError("unknown instance model '" + model + "'");
    }
    if (j.contains("x")) {
      auto x = j.at("x").get<std::vector<double>>();
      if (static_cast<int>(x.size()) != m->size()) {
        throw InputError("x must have one entry per element");
      }
      for (double xi : x) {
        if (!(xi >= 0.0 && xi <= 1.0)) {
          throw InputError("x entries must lie in [0, 1]");
        }
      }
      file.x = std::move(x);
    }
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed instance JSON: ") + e.what());
  }
  return file;
}

nlohmann::json InstanceToJson(const BernoulliInstance& inst) {
  return {{"v", 1},
          {"matroid", inst.matroid->ToJson()},
          {"model", "bernoulli"},
          {"p", inst.p},
          {"y", inst.y}};
}

nlohmann::json InstanceToJson(const GeneralInstance& inst) {
  nlohmann::json dists = nlohmann::json::array();
  for (const auto& d : inst.dists) {
    nlohmann::json atoms = nlohmann::json::array();
    for (const Atom& a : d.atoms()) atoms.push_back({a.value, a.probability});
    dists.push_back(atoms);
  }
  return {{"v", 1},
          {"matroid", inst.matroid->ToJson()},
          {"model", "general"},
          {"dists", dists}};
}

InstanceFile LoadInstanceFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open instance file '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw InputError("cannot parse '" + path + "': " + e.what());
  }
  return InstanceFromJson(j);
}

}  // namespace ocrs
