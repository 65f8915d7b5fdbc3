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

#include "ocrs/schemes.h"

#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <utility>

#include "ocrs/errors.h"

namespace ocrs {
namespace {

void CheckActive(const ElementSet& active, int n) {
  if (active.universe() != n) {
    throw InputError("active set is over " + std::to_string(active.universe()) +
                     " elements, expected " + std::to_string(n));
  }
}

void CheckArrival(const ArrivalOrder& arrival, int n) {
  if (!IsPermutation(arrival.sequence, n)) {
    throw InputError("arrival order is not a permutation of the elements");
  }
}

void Accept(SelectionTrace& trace, TraceStep& step) {
  step.accepted = true;
  trace.accepted.push_back(step.element);
  const double price = step.threshold.value_or(0.0);
  trace.revenue += price;
  trace.utility += std::max(0.0, step.value - price);
  trace.total += step.value;
}

TraceStep MakeStep(const ArrivalOrder& arrival, int position,
                   const ElementSet& active, double value) {
  TraceStep s;
  s.element = arrival.sequence[position];
  s.position = position;
  s.time = arrival.TimeAt(position);
  s.active = active.contains(s.element);
  s.value = s.active ? value : 0.0;
  return s;
}

// Unit-value trace for schemes that only decide feasibility.
template <class Decide>
SelectionTrace RunRank1(std::span<const double> x, const ArrivalOrder& arrival,
                        const ElementSet& active, Decide&& decide) {
  const int n = static_cast<int>(x.size());
  CheckActive(active, n);
  CheckArrival(arrival, n);
  SelectionTrace trace;
  for (int k = 0; k < n; ++k) {
    TraceStep step = MakeStep(arrival, k, active, 1.0);
    // The coin is drawn on every step so runs consume a fixed number of
    // random numbers.
    const bool coin = decide(k, step);
    if (trace.accepted.empty() && step.active && coin) Accept(trace, step);
    trace.steps.push_back(step);
  }
  return trace;
}

}  // namespace

std::string ArrivalModeName(ArrivalMode mode) {
  return mode == ArrivalMode::kFixed ? "fixed" : "random";
}

ElementSet SelectionTrace::AcceptedSet(int n) const {
  return ElementSet(n, std::span<const Element>(accepted));
}

nlohmann::json SelectionTrace::ToJson() const {
  nlohmann::json j;
  std::vector<Element> order;
  std::vector<Element> active;
  nlohmann::json steps_json = nlohmann::json::array();
  bool timed = false;
  for (const TraceStep& s : steps) {
    order.push_back(s.element);
    if (s.active) active.push_back(s.element);
    nlohmann::json sj{{"element", s.element},
                      {"position", s.position},
                      {"active", s.active},
                      {"value", s.value},
                      {"accepted", s.accepted}};
    if (!std::isnan(s.time)) {
      sj["time"] = s.time;
      timed = true;
    }
    if (s.threshold) sj["threshold"] = *s.threshold;
    steps_json.push_back(std::move(sj));
  }
  j["order"] = order;
  j["timed"] = timed;
  j["active"] = active;
  j["steps"] = std::move(steps_json);
  j["accepted"] = accepted;
  j["revenue"] = revenue;
  j["utility"] = utility;
  j["total"] = total;
  return j;
}

double ExponentialAlpha(double t) { return 1.0 - std::exp(t - 1.0); }

SelectionTrace RunThreshold(const BasePriceOracle& prices,
                            std::span<const double> y,
                            const ArrivalOrder& arrival,
                            const ElementSet& active,
                            const AlphaSchedule& alpha) {
  const Matroid& m = prices.matroid();
  const int n = m.size();
  if (static_cast<int>(y.size()) != n) {
    throw InputError("value vector does not match the matroid size");
  }
  CheckActive(active, n);
  CheckArrival(arrival, n);
  SelectionTrace trace;
  ElementSet accepted(n);
  for (int k = 0; k < n; ++k) {
    TraceStep step = MakeStep(arrival, k, active, y[arrival.sequence[k]]);
    const double b = prices.Price(accepted, step.element);
    step.threshold = alpha(k, step.time) * b;
    if (step.active && step.value > *step.threshold &&
        m.IsIndependent(accepted.with(step.element))) {
      accepted.insert(step.element);
      Accept(trace, step);
    }
    trace.steps.push_back(step);
  }
  return trace;
}

ProphetAlgorithm::ProphetAlgorithm(MatroidPtr matroid, ExAnteSolution solution,
                                   Decomposition dec)
    : matroid_(std::move(matroid)), solution_(std::move(solution)) {
  prices_ = std::make_shared<BasePriceOracle>(matroid_, std::move(dec),
                                              solution_.y);
}

SelectionTrace ProphetAlgorithm::RunAdversarial(const ArrivalOrder& arrival,
                                                const ElementSet& active) const {
  return RunThreshold(*prices_, solution_.y, arrival, active,
                      [](int, double) { return kHalf; });
}

SelectionTrace ProphetAlgorithm::RunRandomOrder(const ArrivalOrder& arrival,
                                                const ElementSet& active) const {
  if (!arrival.times) {
    throw MismatchError("random-order algorithm needs arrival times");
  }
  return RunThreshold(*prices_, solution_.y, arrival, active,
                      [](int, double t) { return ExponentialAlpha(t); });
}

ProphetAlgorithm MakeProphetAlgorithm(const BernoulliInstance& inst) {
  ExAnteSolution sol = SolveExAnte(inst);
  Decomposition dec = Decompose(sol.x, *inst.matroid);
  return ProphetAlgorithm(inst.matroid, std::move(sol), std::move(dec));
}

void CheckRank1Point(std::span<const double> x) {
  double sum = 0.0;
  for (double v : x) {
    if (!(v >= 0.0 && v <= 1.0)) throw InputError("x must lie in [0, 1]");
    sum += v;
  }
  if (sum > 1.0 + 1e-9) {
    throw MismatchError("rank-1 scheme needs sum(x) <= 1, got " +
                        std::to_string(sum));
  }
}

MagicianState BuildMagician(std::span<const double> x,
                            std::span<const Element> order, double alpha) {
  const int n = static_cast<int>(x.size());
  if (!IsPermutation(order, n)) {
    throw InputError("arrival order is not a permutation of the elements");
  }
  MagicianState st;
  st.alpha = alpha;
  st.reach.assign(n + 1, 0.0);
  st.consider.assign(n, 0.0);
  st.reach[0] = 1.0;
  for (int k = 0; k < n; ++k) {
    const double r = st.reach[k];
    const double q = r > 0.0 ? alpha / r : std::numeric_limits<double>::infinity();
    if (q > 1.0 + 1e-12) {
      throw MismatchError("consideration probability exceeds 1 at position " +
                          std::to_string(k) + " (sum(x) too large)");
    }
    st.consider[k] = std::min(q, 1.0);
    st.reach[k + 1] = r - alpha * x[order[k]];
  }
  return st;
}

SelectionTrace RunRank1Ocrs(std::span<const double> x,
                            const ArrivalOrder& arrival,
                            const ElementSet& active, Rng& rng) {
  CheckRank1Point(x);
  CheckArrival(arrival, static_cast<int>(x.size()));
  const MagicianState st = BuildMagician(x, arrival.sequence);
  return RunRank1(x, arrival, active, [&](int k, const TraceStep&) {
    return rng.bernoulli(st.consider[k]);
  });
}

SelectionTrace RunRank1Rcrs(std::span<const double> x,
                            const ArrivalOrder& arrival,
                            const ElementSet& active, Rng& rng) {
  CheckRank1Point(x);
  if (!arrival.times) throw MismatchError("rank-1 RCRS needs arrival times");
  return RunRank1(x, arrival, active, [&](int, const TraceStep& s) {
    return rng.bernoulli(std::exp(-s.time * x[s.element]));
  });
}

SelectionTrace RunQuarterBaseline(std::span<const double> x,
                                  const ArrivalOrder& arrival,
                                  const ElementSet& active, Rng& rng) {
  CheckRank1Point(x);
  return RunRank1(x, arrival, active,
                  [&](int, const TraceStep&) { return rng.bernoulli(0.5); });
}

std::vector<double> Rank1RcrsSelection(std::span<const double> x) {
  const double total = std::accumulate(x.begin(), x.end(), 0.0);
  // (1 - e^-X) / X, continuous at X = 0.
  const double factor = total < 1e-12 ? 1.0 : -std::expm1(-total) / total;
  std::vector<double> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] * factor;
  return out;
}

namespace {

class ThresholdScheme : public OnlineScheme {
 public:
  ThresholdScheme(std::shared_ptr<const ProphetAlgorithm> alg, ArrivalMode mode)
      : alg_(std::move(alg)), mode_(mode) {}
  std::string name() const override {
    return mode_ == ArrivalMode::kFixed ? "adversarial" : "random-order";
  }
  ArrivalMode mode() const override { return mode_; }
  int size() const override { return alg_->matroid().size(); }
  SelectionTrace Run(const ArrivalOrder& arrival, const ElementSet& active,
                     Rng&) const override {
    return mode_ == ArrivalMode::kFixed ? alg_->RunAdversarial(arrival, active)
                                        : alg_->RunRandomOrder(arrival, active);
  }
  std::optional<std::vector<double>> SelectionProbabilities(
      const ArrivalOrder& arrival, const ElementSet& active) const override {
    Rng unused(0);
    const SelectionTrace t = Run(arrival, active, unused);
    std::vector<double> p(size(), 0.0);
    for (Element e : t.accepted) p[e] = 1.0;
    return p;
  }
  bool deterministic() const override { return true; }
  bool order_only() const override { return mode_ == ArrivalMode::kFixed; }

 private:
  std::shared_ptr<const ProphetAlgorithm> alg_;
  ArrivalMode mode_;
};

// Rank-1 scheme where the element at position k, if reached with nothing
// accepted, is taken with probability accept_prob(k, element, time).
class Rank1CoinScheme : public OnlineScheme {
 public:
  explicit Rank1CoinScheme(std::vector<double> x) : x_(std::move(x)) {
    CheckRank1Point(x_);
  }
  int size() const override { return static_cast<int>(x_.size()); }
  std::optional<std::vector<double>> SelectionProbabilities(
      const ArrivalOrder& arrival, const ElementSet& active) const override {
    std::vector<double> p(size(), 0.0);
    const std::vector<double> coin = Coins(arrival);
    double none_yet = 1.0;
    for (int k = 0; k < size(); ++k) {
      const Element e = arrival.sequence[k];
      if (!active.contains(e)) continue;
      p[e] = none_yet * coin[k];
      none_yet *= 1.0 - coin[k];
    }
    return p;
  }

 protected:
  virtual std::vector<double> Coins(const ArrivalOrder& arrival) const = 0;
  std::vector<double> x_;
};

class MagicianScheme : public Rank1CoinScheme {
 public:
  using Rank1CoinScheme::Rank1CoinScheme;
  std::string name() const override { return "rank1-ocrs"; }
  ArrivalMode mode() const override { return ArrivalMode::kFixed; }
  SelectionTrace Run(const ArrivalOrder& arrival, const ElementSet& active,
                     Rng& rng) const override {
    return RunRank1Ocrs(x_, arrival, active, rng);
  }

 protected:
  std::vector<double> Coins(const ArrivalOrder& arrival) const override {
    return BuildMagician(x_, arrival.sequence).consider;
  }
};

class ExponentialRcrsScheme : public Rank1CoinScheme {
 public:
  using Rank1CoinScheme::Rank1CoinScheme;
  std::string name() const override { return "rank1-rcrs"; }
  ArrivalMode mode() const override { return ArrivalMode::kRandom; }
  bool order_only() const override { return false; }
  std::optional<std::vector<double>> ClosedFormSelection() const override {
    return Rank1RcrsSelection(x_);
  }
  SelectionTrace Run(const ArrivalOrder& arrival, const ElementSet& active,
                     Rng& rng) const override {
    return RunRank1Rcrs(x_, arrival, active, rng);
  }

 protected:
  std::vector<double> Coins(const ArrivalOrder& arrival) const override {
    if (!arrival.times) throw MismatchError("rank-1 RCRS needs arrival times");
    std::vector<double> c(size());
    for (int k = 0; k < size(); ++k) {
      c[k] = std::exp(-arrival.TimeAt(k) * x_[arrival.sequence[k]]);
    }
    return c;
  }
};

class QuarterScheme : public Rank1CoinScheme {
 public:
  using Rank1CoinScheme::Rank1CoinScheme;
  std::string name() const override { return "quarter"; }
  ArrivalMode mode() const override { return ArrivalMode::kFixed; }
  SelectionTrace Run(const ArrivalOrder& arrival, const ElementSet& active,
                     Rng& rng) const override {
    return RunQuarterBaseline(x_, arrival, active, rng);
  }

 protected:
  std::vector<double> Coins(const ArrivalOrder&) const override {
    return std::vector<double>(size(), 0.5);
  }
};

class GreedyScheme : public OnlineScheme {
 public:
  explicit GreedyScheme(MatroidPtr m) : m_(std::move(m)) {}
  std::string name() const override { return "greedy"; }
  ArrivalMode mode() const override { return ArrivalMode::kFixed; }
  int size() const override { return m_->size(); }
  bool deterministic() const override { return true; }
  SelectionTrace Run(const ArrivalOrder& arrival, const ElementSet& active,
                     Rng&) const override {
    const int n = size();
    CheckActive(active, n);
    CheckArrival(arrival, n);
    SelectionTrace trace;
    ElementSet accepted(n);
    for (int k = 0; k < n; ++k) {
      TraceStep step = MakeStep(arrival, k, active, 1.0);
      if (step.active && m_->IsIndependent(accepted.with(step.element))) {
        accepted.insert(step.element);
        Accept(trace, step);
      }
      trace.steps.push_back(step);
    }
    return trace;
  }
  std::optional<std::vector<double>> SelectionProbabilities(
      const ArrivalOrder& arrival, const ElementSet& active) const override {
    Rng unused(0);
    std::vector<double> p(size(), 0.0);
    for (Element e : Run(arrival, active, unused).accepted) p[e] = 1.0;
    return p;
  }

 private:
  MatroidPtr m_;
};

class NeverScheme : public OnlineScheme {
 public:
  explicit NeverScheme(int n) : n_(n) {}
  std::string name() const override { return "never"; }
  ArrivalMode mode() const override { return ArrivalMode::kFixed; }
  int size() const override { return n_; }
  bool deterministic() const override { return true; }
  SelectionTrace Run(const ArrivalOrder& arrival, const ElementSet& active,
                     Rng&) const override {
    CheckActive(active, n_);
    CheckArrival(arrival, n_);
    SelectionTrace trace;
    for (int k = 0; k < n_; ++k) trace.steps.push_back(MakeStep(arrival, k, active, 1.0));
    return trace;
  }
  std::optional<std::vector<double>> SelectionProbabilities(
      const ArrivalOrder&, const ElementSet&) const override {
    return std::vector<double>(n_, 0.0);
  }

 private:
  int n_;
};

}  // namespace

SchemePtr MakeThresholdScheme(std::shared_ptr<const ProphetAlgorithm> alg,
                              ArrivalMode mode) {
  return std::make_shared<ThresholdScheme>(std::move(alg), mode);
}
SchemePtr MakeMagicianScheme(std::vector<double> x) {
  return std::make_shared<MagicianScheme>(std::move(x));
}
SchemePtr MakeExponentialRcrsScheme(std::vector<double> x) {
  return std::make_shared<ExponentialRcrsScheme>(std::move(x));
}
SchemePtr MakeQuarterScheme(std::vector<double> x) {
  return std::make_shared<QuarterScheme>(std::move(x));
}
SchemePtr MakeGreedyScheme(MatroidPtr matroid) {
  return std::make_shared<GreedyScheme>(std::move(matroid));
}
SchemePtr MakeNeverScheme(int n) { return std::make_shared<NeverScheme>(n); }

}  // namespace ocrs
