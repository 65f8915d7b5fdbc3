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

#ifndef OCRS_HARNESS_H_
#define OCRS_HARNESS_H_

#include <cstdint>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "ocrs/exante.h"
#include "ocrs/instance.h"
#include "ocrs/schemes.h"

namespace ocrs {

struct MeasureOptions {
  std::int64_t trials = 100000;
  std::uint64_t seed = 0;
  int workers = 0;  // 0 = all cores
  // Fixed arrivals; empty means 0, 1, ..., n-1.
  std::vector<Element> order;
  int fixed_cap = 14;
  int random_cap = 7;
  // Monte Carlo runs write one JSON line per trace here when set.
  std::ostream* traces = nullptr;
  std::string instance_hash;
};

struct ElementSelectability {
  Element element = 0;
  double x = 0.0;
  double p_select = 0.0;
  bool exact = true;
  double se = 0.0;
  std::int64_t trials = 0;
};

struct SelectabilityReport {
  std::string scheme;
  std::string instance_hash;
  std::uint64_t seed = 0;
  std::vector<ElementSelectability> elements;
  // min over x_i > 0 of p_i / x_i (1 when every x_i is 0).
  double c = 1.0;

  bool exact() const;
  // min over x_i > 0 of (p_i - k se_i) / x_i.
  double LowerC(double k) const;
  nlohmann::json ToJson() const;
  std::string ToCsv() const;
};

struct RatioReport {
  std::string scheme;
  std::string instance_hash;
  std::uint64_t seed = 0;
  std::int64_t trials = 0;
  double mean_alg = 0.0;
  double se = 0.0;
  double mean_revenue = 0.0;
  double mean_utility = 0.0;
  double objective = 0.0;
  bool ratio_defined = false;
  double ratio = 0.0;
  std::vector<Element> order;

  nlohmann::json ToJson() const;
  std::string ToCsv() const;
};

// Pr[i selected] along a fixed order with element i active w.p. prob[i],
// by enumerating all activity patterns.
std::vector<double> ExactSelectionAlong(const OnlineScheme& scheme,
                                        std::span<const double> prob,
                                        std::span<const Element> order,
                                        int workers = 0);

SelectabilityReport ExactSelectability(const OnlineScheme& scheme,
                                       std::span<const double> x,
                                       const MeasureOptions& options = {});
SelectabilityReport EstimateSelectability(const OnlineScheme& scheme,
                                          std::span<const double> x,
                                          const MeasureOptions& options = {});

// Monte Carlo E[sum of values of accepted elements]; element i is active
// with probability p[i] and then worth y[i].
RatioReport MeasureRatio(const OnlineScheme& scheme, std::span<const double> p,
                         std::span<const double> y, double objective,
                         const MeasureOptions& options = {});

// Exact E[Alg] along a fixed order.
double ExactExpectedValue(const OnlineScheme& scheme, std::span<const double> p,
                          std::span<const double> y,
                          std::span<const Element> order, int workers = 0);

struct WorstOrderOptions {
  int exhaust_limit = 6;
  int sampled_orders = 1000;
  std::uint64_t seed = 0;
  int workers = 0;
};

struct OrderValue {
  std::vector<Element> order;
  double value = 0.0;
  int orders_checked = 0;
};

// Order minimizing the exact E[Alg]: all n! orders when n <= exhaust_limit,
// otherwise the identity, its reverse and sampled permutations.
OrderValue WorstOrder(const OnlineScheme& scheme, std::span<const double> p,
                      std::span<const double> y,
                      const WorstOrderOptions& options = {});

struct GeneralRatioReport {
  RatioReport ratio;
  std::vector<double> activation;
  std::vector<double> activation_se;
};

// Runs the prophet algorithm of the reduced Bernoulli instance on a
// discrete-valued instance: values are drawn from the distributions,
// activation follows the quantile rules, and Alg sums the realized values.
GeneralRatioReport MeasureGeneralRatio(const ProphetAlgorithm& alg,
                                       const GeneralInstance& inst,
                                       std::span<const QuantileRule> rules,
                                       ArrivalMode mode,
                                       const MeasureOptions& options = {});

// E[max-weight independent set value], by enumeration.
double BruteForceOffline(const BernoulliInstance& inst);
double BruteForceOffline(const GeneralInstance& inst);

// Optimum of the ex-ante LP written out with one rank constraint per
// subset, solved by the simplex method (n <= 12).
double ExAnteLpOptimum(const BernoulliInstance& inst);

struct ExperimentOptions {
  std::int64_t trials = 1000000;
  std::uint64_t seed = 0;
  int workers = 0;
  double sigma = 3.0;
};

// Optimality ceilings: the two-element fixed-order LP optimum against
// 1/2 + eps/2, and the x_i = 1/n random-order ceiling 1 - (1 - 1/n)^n
// against the exponential scheme.
nlohmann::json OptimalityExperiments(const ExperimentOptions& options = {});

// Hat graphs: base-edge selectability of the oblivious greedy rule as the
// hat count grows, the LP-built scheme, and the prophet ratio.
nlohmann::json HatRegression(const ExperimentOptions& options = {},
                             int max_hats = 7);

}  // namespace ocrs

#endif  // OCRS_HARNESS_H_
