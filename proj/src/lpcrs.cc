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

#include "ocrs/lpcrs.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <unordered_map>
#include <utility>

#include "ocrs/errors.h"
#include "ocrs/kernels.h"
#include "ocrs/lp.h"
#include "ocrs/parallel.h"

namespace ocrs {
namespace {

constexpr std::uint64_t kFnvOffset = 0xcbf29ce484222325ull;

std::uint64_t Fnv(std::uint64_t h, std::uint64_t v) {
  for (int b = 0; b < 8; ++b) {
    h ^= (v >> (8 * b)) & 0xff;
    h *= 0x100000001b3ull;
  }
  return h;
}

void CheckPoint(const Matroid& m, std::span<const double> x) {
  if (static_cast<int>(x.size()) != m.size()) {
    throw InputError("x has " + std::to_string(x.size()) +
                     " entries, matroid has " + std::to_string(m.size()));
  }
  for (double v : x) {
    if (!(v >= 0.0 && v <= 1.0)) throw InputError("x must lie in [0, 1]");
  }
}

std::vector<Element> ResolveOrder(std::span<const Element> order, int n) {
  if (order.empty()) {
    std::vector<Element> id(n);
    std::iota(id.begin(), id.end(), 0);
    return id;
  }
  if (!IsPermutation(order, n)) {
    throw InputError("arrival order is not a permutation of the elements");
  }
  return {order.begin(), order.end()};
}

bool Feasible(const Matroid& m, const ElementSet& accepted, Element e) {
  return m.IsIndependent(accepted.with(e));
}

// phi, with infeasible "yes" answers turned into rejections.
bool SafeDecide(const Policy& p, const Matroid& m, const ElementSet& arrived,
                const ElementSet& accepted, Element e) {
  return p.Decide(arrived, accepted, e) && Feasible(m, accepted, e);
}

std::uint64_t RunMask(const Policy& p, const Matroid& m,
                      std::span<const Element> order, std::uint64_t active) {
  const int n = m.size();
  ElementSet arrived(n), accepted(n);
  for (Element e : order) {
    if ((active >> e & 1) && SafeDecide(p, m, arrived, accepted, e)) {
      accepted.insert(e);
    }
    arrived.insert(e);
  }
  return accepted.mask();
}

// Exact q along one order by enumerating activity patterns.
QResult FixedOrderQ(const Policy& p, const Matroid& m, std::span<const double> x,
                    std::span<const Element> order, int workers) {
  const int n = m.size();
  const std::int64_t patterns = std::int64_t{1} << n;
  std::vector<double> w(patterns);
  kernels::PatternWeights(x, w);
  constexpr std::int64_t kChunk = 256;
  auto parts = ParallelChunks<std::vector<std::uint64_t>>(
      patterns, kChunk, workers,
      [&](std::int64_t begin, std::int64_t end, std::int64_t) {
        std::vector<std::uint64_t> sel;
        sel.reserve(end - begin);
        for (std::int64_t a = begin; a < end; ++a) {
          sel.push_back(RunMask(p, m, order, static_cast<std::uint64_t>(a)));
        }
        return sel;
      });
  std::vector<std::uint64_t> selected;
  selected.reserve(patterns);
  for (auto& part : parts) selected.insert(selected.end(), part.begin(), part.end());
  QResult r;
  r.q.assign(n, 0.0);
  r.standard_error.assign(n, 0.0);
  kernels::AccumulateSelected(w, selected, r.q);
  std::uint64_t h = kFnvOffset;
  for (std::uint64_t s : selected) h = Fnv(h, s);
  r.fingerprint = h;
  return r;
}

struct PairHash {
  std::size_t operator()(const std::pair<std::uint64_t, std::uint64_t>& k) const {
    return Fnv(Fnv(kFnvOffset, k.first), k.second);
  }
};

// Exact q under a uniformly random order: forward propagation of the
// probability of each (arrived, accepted) state, layer by layer.
QResult RandomOrderQ(const Policy& p, const Matroid& m, std::span<const double> x) {
  const int n = m.size();
  QResult r;
  r.q.assign(n, 0.0);
  r.standard_error.assign(n, 0.0);
  std::uint64_t h = kFnvOffset;
  std::map<std::pair<std::uint64_t, std::uint64_t>, double> layer{{{0, 0}, 1.0}};
  for (int depth = 0; depth < n; ++depth) {
    std::map<std::pair<std::uint64_t, std::uint64_t>, double> next;
    for (const auto& [state, mass] : layer) {
      const ElementSet arrived = ElementSet::FromMask(n, state.first);
      const ElementSet accepted = ElementSet::FromMask(n, state.second);
      const double share = mass / (n - depth);
      for (Element e = 0; e < n; ++e) {
        if (arrived.contains(e)) continue;
        const std::uint64_t a2 = state.first | (std::uint64_t{1} << e);
        const bool yes = SafeDecide(p, m, arrived, accepted, e);
        h = Fnv(Fnv(Fnv(h, state.first), state.second), (e << 1) | yes);
        if (yes) {
          r.q[e] += share * x[e];
          next[{a2, state.second | (std::uint64_t{1} << e)}] += share * x[e];
          next[{a2, state.second}] += share * (1.0 - x[e]);
        } else {
          next[{a2, state.second}] += share;
        }
      }
    }
    layer = std::move(next);
  }
  r.fingerprint = h;
  return r;
}

std::vector<double> Normalized(std::span<const double> raw,
                               std::span<const double> x) {
  const double s = kernels::Dot(raw, x);
  std::vector<double> y(raw.size(), 0.0);
  if (s > 1e-15) {
    for (std::size_t i = 0; i < raw.size(); ++i) y[i] = std::max(0.0, raw[i]) / s;
    return y;
  }
  const double total = std::accumulate(x.begin(), x.end(), 0.0);
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (x[i] > 0.0) y[i] = 1.0 / total;
  }
  return y;
}

double Value(std::span<const double> q, std::span<const double> y) {
  return kernels::Dot(q, y);
}

}  // namespace

// --- policies ---------------------------------------------------------------

ThresholdPolicy::ThresholdPolicy(std::shared_ptr<const BasePriceOracle> prices,
                                 ExAnteSolution solution,
                                 std::vector<double> schedule)
    : prices_(std::move(prices)),
      solution_(std::move(solution)),
      schedule_(std::move(schedule)) {
  if (schedule_.empty()) throw InputError("empty threshold schedule");
}

double ThresholdPolicy::Multiplier(int arrived_count) const {
  if (schedule_.size() == 1) return schedule_[0];
  return schedule_[std::min<std::size_t>(arrived_count, schedule_.size() - 1)];
}

bool ThresholdPolicy::Decide(const ElementSet& arrived,
                             const ElementSet& accepted, Element next) const {
  const Matroid& m = prices_->matroid();
  if (arrived.contains(next) || !accepted.is_subset_of(arrived) ||
      !Feasible(m, accepted, next)) {
    return false;
  }
  const double threshold = Multiplier(arrived.size()) * prices_->Price(accepted, next);
  return solution_.y[next] > threshold;
}

nlohmann::json ThresholdPolicy::ToJson() const {
  nlohmann::json j = ExAnteToJson(solution_, prices_->decomposition());
  j["kind"] = kind();
  j["alpha"] = schedule_;
  return j;
}

std::size_t TablePolicy::KeyHash::operator()(const Key& k) const {
  return Fnv(Fnv(Fnv(kFnvOffset, k.arrived), k.accepted),
             static_cast<std::uint64_t>(k.next));
}

TablePolicy::TablePolicy(MatroidPtr matroid, std::string label)
    : matroid_(std::move(matroid)), label_(std::move(label)) {
  if (matroid_->size() > 64) throw CapExceededError("table policies need n <= 64");
}

bool TablePolicy::Decide(const ElementSet& arrived, const ElementSet& accepted,
                         Element next) const {
  return table_.count(Key{arrived.mask(), accepted.mask(), next}) > 0;
}

void TablePolicy::Add(const ElementSet& arrived, const ElementSet& accepted,
                      Element next) {
  if (arrived.contains(next) || !accepted.is_subset_of(arrived) ||
      !Feasible(*matroid_, accepted, next)) {
    throw InputError("table entry violates the policy contract");
  }
  table_.insert(Key{arrived.mask(), accepted.mask(), next});
}

nlohmann::json TablePolicy::ToJson() const {
  std::vector<Key> keys(table_.begin(), table_.end());
  std::sort(keys.begin(), keys.end(), [](const Key& a, const Key& b) {
    return std::tie(a.arrived, a.accepted, a.next) <
           std::tie(b.arrived, b.accepted, b.next);
  });
  nlohmann::json rows = nlohmann::json::array();
  for (const Key& k : keys) {
    rows.push_back({ElementSet::FromMask(matroid_->size(), k.arrived).elements(),
                    ElementSet::FromMask(matroid_->size(), k.accepted).elements(),
                    k.next});
  }
  return {{"kind", kind()}, {"label", label_}, {"accept", std::move(rows)}};
}

namespace {

class FixedOrderDp {
 public:
  FixedOrderDp(const Matroid& m, std::span<const double> x,
               std::span<const double> y, std::vector<Element> order,
               TablePolicy& table)
      : m_(m), x_(x), y_(y), order_(std::move(order)), table_(table) {}

  double Value(int k, std::uint64_t accepted) {
    const int n = m_.size();
    if (k == n) return 0.0;
    auto key = std::make_pair(static_cast<std::uint64_t>(k), accepted);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    const Element e = order_[k];
    const ElementSet b = ElementSet::FromMask(n, accepted);
    const double reject = Value(k + 1, accepted);
    double v = reject;
    if (Feasible(m_, b, e)) {
      const double accept = y_[e] + Value(k + 1, accepted | (std::uint64_t{1} << e));
      if (accept > reject + 1e-12) {
        ElementSet arrived(n);
        for (int j = 0; j < k; ++j) arrived.insert(order_[j]);
        table_.Add(arrived, b, e);
        v = x_[e] * accept + (1.0 - x_[e]) * reject;
      }
    }
    memo_[key] = v;
    return v;
  }

 private:
  const Matroid& m_;
  std::span<const double> x_, y_;
  std::vector<Element> order_;
  TablePolicy& table_;
  std::unordered_map<std::pair<std::uint64_t, std::uint64_t>, double, PairHash> memo_;
};

class RandomOrderDp {
 public:
  RandomOrderDp(const Matroid& m, std::span<const double> x,
                std::span<const double> y, TablePolicy& table)
      : m_(m), x_(x), y_(y), table_(table) {}

  double Value(std::uint64_t arrived, std::uint64_t accepted) {
    const int n = m_.size();
    const int left = n - std::popcount(arrived);
    if (left == 0) return 0.0;
    auto key = std::make_pair(arrived, accepted);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    const ElementSet a = ElementSet::FromMask(n, arrived);
    const ElementSet b = ElementSet::FromMask(n, accepted);
    double total = 0.0;
    for (Element e = 0; e < n; ++e) {
      if (a.contains(e)) continue;
      const std::uint64_t a2 = arrived | (std::uint64_t{1} << e);
      const double reject = Value(a2, accepted);
      double v = reject;
      if (Feasible(m_, b, e)) {
        const double accept = y_[e] + Value(a2, accepted | (std::uint64_t{1} << e));
        if (accept > reject + 1e-12) {
          table_.Add(a, b, e);
          v = x_[e] * accept + (1.0 - x_[e]) * reject;
        }
      }
      total += v;
    }
    const double value = total / left;
    memo_[key] = value;
    return value;
  }

 private:
  const Matroid& m_;
  std::span<const double> x_, y_;
  TablePolicy& table_;
  std::unordered_map<std::pair<std::uint64_t, std::uint64_t>, double, PairHash> memo_;
};

}  // namespace

PolicyPtr OptimalPolicy(MatroidPtr m, std::span<const double> x,
                        std::span<const double> y, ArrivalMode mode,
                        std::span<const Element> order) {
  CheckPoint(*m, x);
  const int n = m->size();
  if (n > 20) throw CapExceededError("optimal policy limited to 20 elements");
  auto table = std::make_shared<TablePolicy>(m, "optimal");
  if (mode == ArrivalMode::kFixed) {
    FixedOrderDp dp(*m, x, y, ResolveOrder(order, n), *table);
    dp.Value(0, 0);
  } else {
    RandomOrderDp dp(*m, x, y, *table);
    dp.Value(0, 0);
  }
  return table;
}

// --- running and exact evaluation -------------------------------------------

ElementSet RunPolicy(const Policy& policy, const Matroid& m,
                     std::span<const Element> order, const ElementSet& active) {
  const int n = m.size();
  if (!IsPermutation(order, n)) {
    throw InputError("arrival order is not a permutation of the elements");
  }
  ElementSet arrived(n), accepted(n);
  for (Element e : order) {
    if (active.contains(e) && SafeDecide(policy, m, arrived, accepted, e)) {
      accepted.insert(e);
    }
    arrived.insert(e);
  }
  return accepted;
}

SelectionTrace RunPolicyTrace(const Policy& policy, const Matroid& m,
                              const ArrivalOrder& arrival,
                              const ElementSet& active) {
  const int n = m.size();
  if (!IsPermutation(arrival.sequence, n)) {
    throw InputError("arrival order is not a permutation of the elements");
  }
  SelectionTrace trace;
  ElementSet arrived(n), accepted(n);
  for (int k = 0; k < n; ++k) {
    TraceStep s;
    s.element = arrival.sequence[k];
    s.position = k;
    s.time = arrival.TimeAt(k);
    s.active = active.contains(s.element);
    s.value = s.active ? 1.0 : 0.0;
    if (s.active && SafeDecide(policy, m, arrived, accepted, s.element)) {
      accepted.insert(s.element);
      s.accepted = true;
      trace.accepted.push_back(s.element);
      trace.utility += s.value;
      trace.total += s.value;
    }
    arrived.insert(s.element);
    trace.steps.push_back(s);
  }
  return trace;
}

QResult ExactQ(const Policy& policy, const Matroid& m, std::span<const double> x,
               ArrivalMode mode, std::span<const Element> order,
               const ExactQOptions& options) {
  CheckPoint(m, x);
  const int n = m.size();
  const std::vector<Element> ord = ResolveOrder(order, n);
  if (mode == ArrivalMode::kFixed) {
    if (n <= options.fixed_cap) return FixedOrderQ(policy, m, x, ord, options.workers);
    if (options.sampled_orders <= 0) {
      throw CapExceededError("exact q needs n <= " + std::to_string(options.fixed_cap) +
                             " under a fixed order; use sampling");
    }
    // Sampled activity patterns.
    const int t = options.sampled_orders;
    std::vector<double> hits(n, 0.0);
    for (int s = 0; s < t; ++s) {
      Rng rng = Rng::Substream(options.seed, s);
      const ElementSet active = SampleActiveSet(x, rng);
      RunPolicy(policy, m, ord, active).for_each([&](Element e) { hits[e] += 1; });
    }
    QResult r;
    r.exact = false;
    for (int i = 0; i < n; ++i) {
      const double p = hits[i] / t;
      r.q.push_back(p);
      r.standard_error.push_back(std::sqrt(p * (1 - p) / t));
    }
    return r;
  }
  if (n <= options.random_cap) return RandomOrderQ(policy, m, x);
  if (options.sampled_orders <= 0 || n > options.fixed_cap) {
    throw CapExceededError("exact random-order q needs n <= " +
                           std::to_string(options.random_cap) + "; use sampling");
  }
  const int t = options.sampled_orders;
  std::vector<double> sum(n, 0.0), sum_sq(n, 0.0);
  for (int s = 0; s < t; ++s) {
    Rng rng = Rng::Substream(options.seed, s);
    const ArrivalOrder arrival = SampleUniformArrival(n, rng);
    const QResult one = FixedOrderQ(policy, m, x, arrival.sequence, options.workers);
    for (int i = 0; i < n; ++i) {
      sum[i] += one.q[i];
      sum_sq[i] += one.q[i] * one.q[i];
    }
  }
  QResult r;
  r.exact = false;
  for (int i = 0; i < n; ++i) {
    const double mean = sum[i] / t;
    const double var = t > 1 ? std::max(0.0, (sum_sq[i] - t * mean * mean) / (t - 1)) : 0.0;
    r.q.push_back(mean);
    r.standard_error.push_back(std::sqrt(var / t));
  }
  return r;
}

// --- separation oracle -------------------------------------------------------

double TargetConstant(ArrivalMode mode) {
  return mode == ArrivalMode::kFixed ? 0.5 : 1.0 - std::exp(-1.0);
}

SeparationResult SeparationOracle(std::span<const double> y, MatroidPtr m,
                                  std::span<const double> x, ArrivalMode mode,
                                  std::span<const Element> order,
                                  const SeparationOptions& options) {
  CheckPoint(*m, x);
  const int n = m->size();
  if (static_cast<int>(y.size()) != n) throw InputError("dual vector size mismatch");
  SeparationResult best;
  auto consider = [&](PolicyPtr p) {
    QResult q = ExactQ(*p, *m, x, mode, order, options.q);
    const double v = Value(q.q, y);
    if (!best.policy || v > best.value + 1e-12) {
      best.policy = std::move(p);
      best.q = std::move(q);
      best.value = v;
    }
  };
  if (options.optimal) {
    consider(OptimalPolicy(m, x, y, mode, order));
    return best;
  }

  BernoulliInstance inst{m, std::vector<double>(x.begin(), x.end()),
                         std::vector<double>(y.begin(), y.end())};
  ExAnteSolution sol = SolveExAnte(inst);
  Decomposition dec = Decompose(sol.x, *m);
  auto prices = std::make_shared<BasePriceOracle>(m, std::move(dec), sol.y);

  if (mode == ArrivalMode::kFixed) {
    consider(std::make_shared<ThresholdPolicy>(prices, sol, std::vector<double>{kHalf}));
  } else {
    // Positional stand-ins for the time-based multiplier: the k-th
    // arrival's time is the k-th uniform order statistic.
    std::vector<std::vector<double>> schedules;
    auto from_times = [&](auto&& time_of) {
      std::vector<double> s(n);
      for (int k = 0; k < n; ++k) s[k] = ExponentialAlpha(time_of(k));
      return s;
    };
    schedules.push_back(from_times([&](int k) { return (k + 1.0) / (n + 1.0); }));
    schedules.push_back(from_times([&](int k) { return static_cast<double>(k) / n; }));
    schedules.push_back(from_times([&](int k) { return (k + 1.0) / n; }));
    schedules.push_back({kHalf});
    schedules.push_back({0.0});
    Rng rng = Rng::Substream(options.q.seed ^ 0x5eedull, 0);
    for (int s = 0; s < options.sampled_schedules; ++s) {
      std::vector<double> t(n);
      for (double& v : t) v = rng.uniform();
      std::sort(t.begin(), t.end());
      schedules.push_back(from_times([&](int k) { return t[k]; }));
    }
    for (auto& s : schedules) {
      consider(std::make_shared<ThresholdPolicy>(prices, sol, std::move(s)));
    }
  }
  const double target = TargetConstant(mode) * kernels::Dot(x, y);
  if (options.fallback_to_optimal && best.value < target - 1e-9 && n <= 20) {
    const double threshold_value = best.value;
    consider(OptimalPolicy(m, x, y, mode, order));
    best.used_fallback = best.value > threshold_value;
  }
  return best;
}

// --- column generation -------------------------------------------------------

std::vector<double> RandomizedCrs::MixtureQ() const {
  std::vector<double> mix(x.size(), 0.0);
  for (std::size_t k = 0; k < policies.size(); ++k) {
    for (std::size_t i = 0; i < x.size(); ++i) mix[i] += weights[k] * q[k][i];
  }
  return mix;
}

nlohmann::json RandomizedCrs::ToJson() const {
  nlohmann::json j;
  j["mode"] = ArrivalModeName(mode);
  j["order"] = order;
  j["x"] = x;
  j["c"] = c;
  j["weights"] = weights;
  nlohmann::json ps = nlohmann::json::array();
  for (const auto& p : policies) ps.push_back(p->ToJson());
  j["policies"] = std::move(ps);
  j["history"] = history;
  j["fallbacks"] = fallbacks;
  return j;
}

namespace {

struct MasterResult {
  double c = 0.0;
  std::vector<double> lambda;
  std::vector<double> row_duals;  // per element (0 for x_i = 0)
  double convexity_dual = 0.0;
};

MasterResult SolveMaster(std::span<const double> x,
                         const std::vector<std::vector<double>>& q) {
  const int n = static_cast<int>(x.size());
  const int k = static_cast<int>(q.size());
  lp::Problem p;
  p.objective.assign(k + 1, 0.0);
  p.objective[k] = 1.0;
  std::vector<int> row_of(n, -1);
  for (int i = 0; i < n; ++i) {
    if (x[i] <= 0.0) continue;
    lp::Constraint c;
    c.coefficients.assign(k + 1, 0.0);
    for (int j = 0; j < k; ++j) c.coefficients[j] = -q[j][i];
    c.coefficients[k] = x[i];
    c.sense = lp::Sense::kLessEqual;
    c.rhs = 0.0;
    row_of[i] = static_cast<int>(p.constraints.size());
    p.constraints.push_back(std::move(c));
  }
  lp::Constraint convex;
  convex.coefficients.assign(k + 1, 1.0);
  convex.coefficients[k] = 0.0;
  convex.sense = lp::Sense::kEqual;
  convex.rhs = 1.0;
  p.constraints.push_back(std::move(convex));
  const lp::Solution sol = lp::Maximize(p);
  if (sol.status != lp::Status::kOptimal) {
    throw ConvergenceError("restricted LP ended with status " +
                               lp::StatusName(sol.status),
                           0.0);
  }
  MasterResult r;
  r.c = sol.primal[k];
  r.lambda.assign(sol.primal.begin(), sol.primal.begin() + k);
  r.row_duals.assign(n, 0.0);
  for (int i = 0; i < n; ++i) {
    if (row_of[i] >= 0) r.row_duals[i] = std::max(0.0, sol.duals[row_of[i]]);
  }
  r.convexity_dual = sol.duals.back();
  return r;
}

}  // namespace

RandomizedCrs BuildRandomizedCrs(MatroidPtr m, std::span<const double> x,
                                 ArrivalMode mode, std::span<const Element> order,
                                 double target, const BuildOptions& options) {
  CheckPoint(*m, x);
  const int n = m->size();
  RandomizedCrs out;
  out.matroid = m;
  out.x.assign(x.begin(), x.end());
  out.mode = mode;
  if (mode == ArrivalMode::kFixed) out.order = ResolveOrder(order, n);

  const bool any = std::any_of(x.begin(), x.end(), [](double v) { return v > 0.0; });
  if (!any) {
    out.policies.push_back(std::make_shared<TablePolicy>(m, "never"));
    out.weights = {1.0};
    out.q = {std::vector<double>(n, 0.0)};
    out.c = 1.0;
    return out;
  }

  std::vector<std::uint64_t> fingerprints;
  std::vector<double> y = Normalized(std::vector<double>(n, 0.0), x);
  MasterResult master;
  bool have_master = false;
  for (int iter = 0;; ++iter) {
    if (iter >= options.max_iterations) {
      throw ConvergenceError("column generation hit the iteration cap; best c = " +
                                 std::to_string(master.c),
                             master.c);
    }
    SeparationResult sep =
        SeparationOracle(y, m, x, mode, out.order, options.separation);
    if (have_master) {
      // Reduced cost of the new column under the raw LP duals.
      const double reduced =
          Value(sep.q.q, master.row_duals) - master.convexity_dual;
      const bool seen = std::find(fingerprints.begin(), fingerprints.end(),
                                  sep.q.fingerprint) != fingerprints.end();
      if (reduced <= options.improvement_tolerance || seen) break;
    }
    fingerprints.push_back(sep.q.fingerprint);
    out.policies.push_back(sep.policy);
    out.q.push_back(sep.q.q);
    if (sep.used_fallback) ++out.fallbacks;

    master = SolveMaster(x, out.q);
    have_master = true;
    out.history.push_back(master.c);
    if (!options.to_optimality && master.c >= target - options.epsilon) break;
    y = Normalized(master.row_duals, x);
  }

  std::vector<PolicyPtr> kept;
  std::vector<std::vector<double>> kept_q;
  for (std::size_t j = 0; j < out.policies.size(); ++j) {
    if (master.lambda[j] > 1e-15) {
      kept.push_back(out.policies[j]);
      kept_q.push_back(out.q[j]);
      out.weights.push_back(master.lambda[j]);
    }
  }
  const double total = std::accumulate(out.weights.begin(), out.weights.end(), 0.0);
  for (double& w : out.weights) w /= total;
  out.policies = std::move(kept);
  out.q = std::move(kept_q);

  const std::vector<double> mix = out.MixtureQ();
  out.c = std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i) {
    if (x[i] > 0.0) out.c = std::min(out.c, mix[i] / x[i]);
  }
  return out;
}

MixtureCheck VerifyMixture(const RandomizedCrs& scheme, double tolerance,
                           const ExactQOptions& options) {
  const int n = static_cast<int>(scheme.x.size());
  MixtureCheck out;
  out.q.assign(n, 0.0);
  for (std::size_t k = 0; k < scheme.policies.size(); ++k) {
    const QResult r = ExactQ(*scheme.policies[k], *scheme.matroid, scheme.x,
                             scheme.mode, scheme.order, options);
    for (int i = 0; i < n; ++i) out.q[i] += scheme.weights[k] * r.q[i];
  }
  out.min_ratio = std::numeric_limits<double>::infinity();
  out.ok = true;
  for (int i = 0; i < n; ++i) {
    if (scheme.x[i] <= 0.0) continue;
    out.min_ratio = std::min(out.min_ratio, out.q[i] / scheme.x[i]);
    if (out.q[i] < scheme.c * scheme.x[i] - tolerance) out.ok = false;
  }
  return out;
}

SelectionTrace ExecuteRandomizedCrs(const RandomizedCrs& scheme, ArrivalMode mode,
                                    const ArrivalOrder& arrival,
                                    const ElementSet& active, Rng& rng) {
  if (mode != scheme.mode) {
    throw MismatchError("scheme was built for " + ArrivalModeName(scheme.mode) +
                        " arrivals, asked to run under " + ArrivalModeName(mode));
  }
  const double u = rng.uniform();
  double cum = 0.0;
  std::size_t pick = scheme.policies.size() - 1;
  for (std::size_t k = 0; k < scheme.weights.size(); ++k) {
    cum += scheme.weights[k];
    if (u < cum) {
      pick = k;
      break;
    }
  }
  return RunPolicyTrace(*scheme.policies[pick], *scheme.matroid, arrival, active);
}

namespace {

class RandomizedCrsScheme : public OnlineScheme {
 public:
  explicit RandomizedCrsScheme(std::shared_ptr<const RandomizedCrs> s)
      : s_(std::move(s)) {}
  std::string name() const override { return "lp-ocrs"; }
  ArrivalMode mode() const override { return s_->mode; }
  int size() const override { return s_->matroid->size(); }
  SelectionTrace Run(const ArrivalOrder& arrival, const ElementSet& active,
                     Rng& rng) const override {
    return ExecuteRandomizedCrs(*s_, s_->mode, arrival, active, rng);
  }
  std::optional<std::vector<double>> SelectionProbabilities(
      const ArrivalOrder& arrival, const ElementSet& active) const override {
    std::vector<double> p(size(), 0.0);
    for (std::size_t k = 0; k < s_->policies.size(); ++k) {
      RunPolicy(*s_->policies[k], *s_->matroid, arrival.sequence, active)
          .for_each([&](Element e) { p[e] += s_->weights[k]; });
    }
    return p;
  }

 private:
  std::shared_ptr<const RandomizedCrs> s_;
};

}  // namespace

SchemePtr MakeRandomizedCrsScheme(std::shared_ptr<const RandomizedCrs> scheme) {
  return std::make_shared<RandomizedCrsScheme>(std::move(scheme));
}

WorstOrderResult BuildWorstOrder(MatroidPtr m, std::span<const double> x,
                                 const BuildOptions& options) {
  const int n = m->size();
  if (n > 6) throw CapExceededError("worst-order search limited to 6 elements");
  std::vector<Element> order(n);
  std::iota(order.begin(), order.end(), 0);
  WorstOrderResult out;
  out.c = std::numeric_limits<double>::infinity();
  do {
    const RandomizedCrs s = BuildRandomizedCrs(m, x, ArrivalMode::kFixed, order,
                                               TargetConstant(ArrivalMode::kFixed),
                                               options);
    ++out.orders;
    if (s.c < out.c) {
      out.c = s.c;
      out.order = order;
    }
  } while (std::next_permutation(order.begin(), order.end()));
  return out;
}

}  // namespace ocrs
