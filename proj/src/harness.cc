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

#include "ocrs/harness.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <string>
#include <utility>

#include "ocrs/corpus.h"
#include "ocrs/errors.h"
#include "ocrs/kernels.h"
#include "ocrs/lp.h"
#include "ocrs/lpcrs.h"
#include "ocrs/parallel.h"

namespace ocrs {
namespace {

constexpr std::int64_t kTrialChunk = 4096;
constexpr std::int64_t kPatternChunk = 256;

std::vector<Element> OrderOrIdentity(std::span<const Element> order, int n) {
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

void CheckSize(std::span<const double> v, int n, const char* what) {
  if (static_cast<int>(v.size()) != n) {
    throw InputError(std::string(what) + " has " + std::to_string(v.size()) +
                     " entries, scheme expects " + std::to_string(n));
  }
}

ArrivalOrder DrawArrival(const OnlineScheme& scheme,
                         const std::vector<Element>& fixed, Rng& rng) {
  if (scheme.mode() == ArrivalMode::kRandom) {
    return SampleUniformArrival(scheme.size(), rng);
  }
  return FixedArrival(fixed);
}

double MinRatio(const std::vector<ElementSelectability>& els, double k) {
  double c = std::numeric_limits<double>::infinity();
  for (const auto& e : els) {
    if (e.x > 0.0) c = std::min(c, (e.p_select - k * e.se) / e.x);
  }
  return std::isinf(c) ? 1.0 : c;
}

std::string Num(double v) {
  std::ostringstream s;
  s.precision(17);
  s << v;
  return s.str();
}

}  // namespace

// --- reports ----------------------------------------------------------------

bool SelectabilityReport::exact() const {
  return std::all_of(elements.begin(), elements.end(),
                     [](const ElementSelectability& e) { return e.exact; });
}

double SelectabilityReport::LowerC(double k) const { return MinRatio(elements, k); }

nlohmann::json SelectabilityReport::ToJson() const {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& e : elements) {
    rows.push_back({{"element", e.element},
                    {"x", e.x},
                    {"p_select", e.p_select},
                    {"mode", e.exact ? "exact" : "estimate"},
                    {"se", e.se},
                    {"trials", e.trials}});
  }
  return {{"scheme", scheme}, {"instance_hash", instance_hash}, {"seed", seed},
          {"c", c},           {"elements", std::move(rows)}};
}

std::string SelectabilityReport::ToCsv() const {
  std::ostringstream s;
  s << "element,x_i,p_select,mode,se,trials\n";
  for (const auto& e : elements) {
    s << e.element << ',' << Num(e.x) << ',' << Num(e.p_select) << ','
      << (e.exact ? "exact" : "estimate") << ',' << Num(e.se) << ',' << e.trials
      << '\n';
  }
  return s.str();
}

nlohmann::json RatioReport::ToJson() const {
  nlohmann::json j{{"scheme", scheme},
                   {"instance_hash", instance_hash},
                   {"seed", seed},
                   {"trials", trials},
                   {"mean_alg", mean_alg},
                   {"se", se},
                   {"mean_revenue", mean_revenue},
                   {"mean_utility", mean_utility},
                   {"objective", objective},
                   {"order", order}};
  j["ratio"] = ratio_defined ? nlohmann::json(ratio) : nlohmann::json(nullptr);
  return j;
}

std::string RatioReport::ToCsv() const {
  std::ostringstream s;
  s << "scheme,trials,mean_alg,se,mean_revenue,mean_utility,objective,ratio\n";
  s << scheme << ',' << trials << ',' << Num(mean_alg) << ',' << Num(se) << ','
    << Num(mean_revenue) << ',' << Num(mean_utility) << ',' << Num(objective) << ','
    << (ratio_defined ? Num(ratio) : std::string("undefined")) << '\n';
  return s.str();
}

// --- exact evaluation -------------------------------------------------------

std::vector<double> ExactSelectionAlong(const OnlineScheme& scheme,
                                        std::span<const double> prob,
                                        std::span<const Element> order,
                                        int workers) {
  const int n = scheme.size();
  CheckSize(prob, n, "probability vector");
  if (n > 30) throw CapExceededError("pattern enumeration limited to 30 elements");
  const ArrivalOrder arrival = FixedArrival(OrderOrIdentity(order, n));
  const std::int64_t patterns = std::int64_t{1} << n;
  std::vector<double> w(patterns);
  kernels::PatternWeights(prob, w);
  std::vector<double> q(n, 0.0);
  if (scheme.deterministic()) {
    Rng unused(0);
    auto parts = ParallelChunks<std::vector<std::uint64_t>>(
        patterns, kPatternChunk, workers,
        [&](std::int64_t begin, std::int64_t end, std::int64_t) {
          std::vector<std::uint64_t> sel;
          Rng rng(0);
          for (std::int64_t a = begin; a < end; ++a) {
            const ElementSet active = ElementSet::FromMask(n, a);
            sel.push_back(scheme.Run(arrival, active, rng).AcceptedSet(n).mask());
          }
          return sel;
        });
    std::vector<std::uint64_t> selected;
    selected.reserve(patterns);
    for (auto& p : parts) selected.insert(selected.end(), p.begin(), p.end());
    kernels::AccumulateSelected(w, selected, q);
    return q;
  }
  auto parts = ParallelChunks<std::vector<double>>(
      patterns, kPatternChunk, workers,
      [&](std::int64_t begin, std::int64_t end, std::int64_t) {
        std::vector<double> part(n, 0.0);
        for (std::int64_t a = begin; a < end; ++a) {
          if (w[a] == 0.0) continue;
          const auto p = scheme.SelectionProbabilities(arrival, ElementSet::FromMask(n, a));
          if (!p) {
            throw CapExceededError("scheme '" + scheme.name() +
                                   "' cannot integrate its coins; use estimate mode");
          }
          for (int i = 0; i < n; ++i) part[i] += w[a] * (*p)[i];
        }
        return part;
      });
  for (const auto& part : parts) {
    for (int i = 0; i < n; ++i) q[i] += part[i];
  }
  return q;
}

SelectabilityReport ExactSelectability(const OnlineScheme& scheme,
                                       std::span<const double> x,
                                       const MeasureOptions& options) {
  const int n = scheme.size();
  CheckSize(x, n, "x");
  std::vector<double> q;
  if (auto closed = scheme.ClosedFormSelection()) {
    q = *closed;
  } else if (scheme.mode() == ArrivalMode::kFixed) {
    if (n > options.fixed_cap) {
      throw CapExceededError("exact selectability needs n <= " +
                             std::to_string(options.fixed_cap) +
                             " for fixed orders; use estimate mode");
    }
    q = ExactSelectionAlong(scheme, x, options.order, options.workers);
  } else {
    if (!scheme.order_only()) {
      throw CapExceededError("scheme '" + scheme.name() +
                             "' depends on arrival times; use estimate mode");
    }
    if (n > options.random_cap) {
      throw CapExceededError("exact random-order selectability needs n <= " +
                             std::to_string(options.random_cap) +
                             "; use estimate mode");
    }
    std::vector<Element> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    q.assign(n, 0.0);
    double count = 0.0;
    do {
      const auto one = ExactSelectionAlong(scheme, x, perm, options.workers);
      for (int i = 0; i < n; ++i) q[i] += one[i];
      count += 1.0;
    } while (std::next_permutation(perm.begin(), perm.end()));
    for (double& v : q) v /= count;
  }
  SelectabilityReport r;
  r.scheme = scheme.name();
  r.instance_hash = options.instance_hash;
  r.seed = options.seed;
  for (int i = 0; i < n; ++i) r.elements.push_back({i, x[i], q[i], true, 0.0, 0});
  r.c = MinRatio(r.elements, 0.0);
  return r;
}

SelectabilityReport EstimateSelectability(const OnlineScheme& scheme,
                                          std::span<const double> x,
                                          const MeasureOptions& options) {
  const int n = scheme.size();
  CheckSize(x, n, "x");
  if (options.trials < 1) throw InputError("trials must be >= 1");
  const std::vector<Element> fixed = OrderOrIdentity(options.order, n);
  struct Part {
    std::vector<std::int64_t> hits;
    std::string lines;
  };
  auto parts = ParallelChunks<Part>(
      options.trials, kTrialChunk, options.workers,
      [&](std::int64_t begin, std::int64_t end, std::int64_t) {
        Part part;
        part.hits.assign(n, 0);
        for (std::int64_t t = begin; t < end; ++t) {
          Rng rng = Rng::Substream(options.seed, static_cast<std::uint64_t>(t));
          const ElementSet active = SampleActiveSet(x, rng);
          const ArrivalOrder arrival = DrawArrival(scheme, fixed, rng);
          const SelectionTrace trace = scheme.Run(arrival, active, rng);
          for (Element e : trace.accepted) ++part.hits[e];
          if (options.traces) part.lines += trace.ToJson().dump() + "\n";
        }
        return part;
      });
  std::vector<std::int64_t> hits(n, 0);
  for (const Part& p : parts) {
    for (int i = 0; i < n; ++i) hits[i] += p.hits[i];
    if (options.traces) *options.traces << p.lines;
  }
  SelectabilityReport r;
  r.scheme = scheme.name();
  r.instance_hash = options.instance_hash;
  r.seed = options.seed;
  const double t = static_cast<double>(options.trials);
  for (int i = 0; i < n; ++i) {
    const double p = hits[i] / t;
    r.elements.push_back({i, x[i], p, false, std::sqrt(p * (1.0 - p) / t), options.trials});
  }
  r.c = MinRatio(r.elements, 0.0);
  return r;
}

RatioReport MeasureRatio(const OnlineScheme& scheme, std::span<const double> p,
                         std::span<const double> y, double objective,
                         const MeasureOptions& options) {
  const int n = scheme.size();
  CheckSize(p, n, "p");
  CheckSize(y, n, "y");
  if (options.trials < 2) throw InputError("ratio measurement needs >= 2 trials");
  const std::vector<Element> fixed = OrderOrIdentity(options.order, n);
  struct Part {
    double alg = 0, alg_sq = 0, revenue = 0, utility = 0;
    std::string lines;
  };
  auto parts = ParallelChunks<Part>(
      options.trials, kTrialChunk, options.workers,
      [&](std::int64_t begin, std::int64_t end, std::int64_t) {
        Part part;
        for (std::int64_t t = begin; t < end; ++t) {
          Rng rng = Rng::Substream(options.seed, static_cast<std::uint64_t>(t));
          const ElementSet active = SampleActiveSet(p, rng);
          const ArrivalOrder arrival = DrawArrival(scheme, fixed, rng);
          const SelectionTrace trace = scheme.Run(arrival, active, rng);
          double alg = 0.0;
          for (Element e : trace.accepted) alg += y[e];
          part.alg += alg;
          part.alg_sq += alg * alg;
          part.revenue += trace.revenue;
          part.utility += trace.utility;
          if (options.traces) part.lines += trace.ToJson().dump() + "\n";
        }
        return part;
      });
  Part sum;
  for (const Part& part : parts) {
    sum.alg += part.alg;
    sum.alg_sq += part.alg_sq;
    sum.revenue += part.revenue;
    sum.utility += part.utility;
    if (options.traces) *options.traces << part.lines;
  }
  const double t = static_cast<double>(options.trials);
  RatioReport r;
  r.scheme = scheme.name();
  r.instance_hash = options.instance_hash;
  r.seed = options.seed;
  r.trials = options.trials;
  r.order = scheme.mode() == ArrivalMode::kFixed ? fixed : std::vector<Element>{};
  r.mean_alg = sum.alg / t;
  const double var = std::max(0.0, (sum.alg_sq - t * r.mean_alg * r.mean_alg) / (t - 1));
  r.se = std::sqrt(var / t);
  r.mean_revenue = sum.revenue / t;
  r.mean_utility = sum.utility / t;
  r.objective = objective;
  r.ratio_defined = objective > 0.0;
  r.ratio = r.ratio_defined ? r.mean_alg / objective : 0.0;
  return r;
}

double ExactExpectedValue(const OnlineScheme& scheme, std::span<const double> p,
                          std::span<const double> y, std::span<const Element> order,
                          int workers) {
  const std::vector<double> q = ExactSelectionAlong(scheme, p, order, workers);
  return kernels::Dot(q, y);
}

OrderValue WorstOrder(const OnlineScheme& scheme, std::span<const double> p,
                      std::span<const double> y, const WorstOrderOptions& options) {
  const int n = scheme.size();
  OrderValue worst;
  worst.value = std::numeric_limits<double>::infinity();
  auto check = [&](const std::vector<Element>& order) {
    const double v = ExactExpectedValue(scheme, p, y, order, options.workers);
    ++worst.orders_checked;
    if (v < worst.value) {
      worst.value = v;
      worst.order = order;
    }
  };
  std::vector<Element> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  if (n <= options.exhaust_limit) {
    do {
      check(perm);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return worst;
  }
  check(perm);
  std::reverse(perm.begin(), perm.end());
  check(perm);
  for (int s = 2; s < options.sampled_orders; ++s) {
    Rng rng = Rng::Substream(options.seed, static_cast<std::uint64_t>(s));
    std::shuffle(perm.begin(), perm.end(), rng.engine());
    check(perm);
  }
  return worst;
}

GeneralRatioReport MeasureGeneralRatio(const ProphetAlgorithm& alg,
                                       const GeneralInstance& inst,
                                       std::span<const QuantileRule> rules,
                                       ArrivalMode mode,
                                       const MeasureOptions& options) {
  const int n = inst.size();
  if (static_cast<int>(rules.size()) != n) throw InputError("one rule per element");
  const std::vector<Element> fixed = OrderOrIdentity(options.order, n);
  struct Part {
    double alg = 0, alg_sq = 0, revenue = 0, utility = 0;
    std::vector<std::int64_t> active;
  };
  auto parts = ParallelChunks<Part>(
      options.trials, kTrialChunk, options.workers,
      [&](std::int64_t begin, std::int64_t end, std::int64_t) {
        Part part;
        part.active.assign(n, 0);
        for (std::int64_t t = begin; t < end; ++t) {
          Rng rng = Rng::Substream(options.seed, static_cast<std::uint64_t>(t));
          const std::vector<double> v = inst.SampleValues(rng);
          ElementSet active(n);
          for (int i = 0; i < n; ++i) {
            if (Activate(rules[i], v[i], rng)) {
              active.insert(i);
              ++part.active[i];
            }
          }
          const SelectionTrace trace =
              mode == ArrivalMode::kFixed
                  ? alg.RunAdversarial(FixedArrival(fixed), active)
                  : alg.RunRandomOrder(SampleUniformArrival(n, rng), active);
          double realized = 0.0;
          for (Element e : trace.accepted) realized += v[e];
          part.alg += realized;
          part.alg_sq += realized * realized;
          part.revenue += trace.revenue;
          part.utility += trace.utility;
        }
        return part;
      });
  Part sum;
  sum.active.assign(n, 0);
  for (const Part& p : parts) {
    sum.alg += p.alg;
    sum.alg_sq += p.alg_sq;
    sum.revenue += p.revenue;
    sum.utility += p.utility;
    for (int i = 0; i < n; ++i) sum.active[i] += p.active[i];
  }
  const double t = static_cast<double>(options.trials);
  GeneralRatioReport out;
  RatioReport& r = out.ratio;
  r.scheme = mode == ArrivalMode::kFixed ? "adversarial" : "random-order";
  r.instance_hash = options.instance_hash;
  r.seed = options.seed;
  r.trials = options.trials;
  r.mean_alg = sum.alg / t;
  r.se = std::sqrt(std::max(0.0, (sum.alg_sq - t * r.mean_alg * r.mean_alg) / (t - 1)) / t);
  r.mean_revenue = sum.revenue / t;
  r.mean_utility = sum.utility / t;
  r.objective = alg.solution().objective;
  r.ratio_defined = r.objective > 0.0;
  r.ratio = r.ratio_defined ? r.mean_alg / r.objective : 0.0;
  for (int i = 0; i < n; ++i) {
    const double f = sum.active[i] / t;
    out.activation.push_back(f);
    out.activation_se.push_back(std::sqrt(f * (1.0 - f) / t));
  }
  return out;
}

double BruteForceOffline(const BernoulliInstance& inst) {
  inst.Validate();
  const int n = inst.size();
  if (n > 14) throw CapExceededError("offline optimum enumeration limited to 14 elements");
  const std::int64_t patterns = std::int64_t{1} << n;
  std::vector<double> w(patterns);
  kernels::PatternWeights(inst.p, w);
  double total = 0.0;
  std::vector<double> v(n);
  for (std::int64_t a = 0; a < patterns; ++a) {
    if (w[a] == 0.0) continue;
    for (int i = 0; i < n; ++i) v[i] = (a >> i & 1) ? inst.y[i] : 0.0;
    total += w[a] * SetWeight(MaxWeightIndependentSet(*inst.matroid, v), v);
  }
  return total;
}

double BruteForceOffline(const GeneralInstance& inst) {
  inst.Validate();
  const int n = inst.size();
  double combos = 1.0;
  for (const auto& d : inst.dists) combos *= static_cast<double>(d.atoms().size());
  if (combos > double(1 << 20)) {
    throw CapExceededError("offline optimum enumeration limited to 2^20 outcomes");
  }
  std::vector<std::size_t> idx(n, 0);
  std::vector<double> v(n);
  double total = 0.0;
  while (true) {
    double prob = 1.0;
    for (int i = 0; i < n; ++i) {
      const Atom& a = inst.dists[i].atoms()[idx[i]];
      prob *= a.probability;
      v[i] = a.value;
    }
    if (prob > 0.0) total += prob * SetWeight(MaxWeightIndependentSet(*inst.matroid, v), v);
    int k = 0;
    while (k < n && ++idx[k] == inst.dists[k].atoms().size()) idx[k++] = 0;
    if (k == n) break;
  }
  return total;
}

double ExAnteLpOptimum(const BernoulliInstance& inst) {
  inst.Validate();
  const int n = inst.size();
  if (n > 12) throw CapExceededError("rank-constraint LP limited to 12 elements");
  lp::Problem p;
  p.objective = inst.y;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
    const ElementSet s = ElementSet::FromMask(n, mask);
    lp::Constraint c;
    c.coefficients.assign(n, 0.0);
    s.for_each([&](Element e) { c.coefficients[e] = 1.0; });
    c.sense = lp::Sense::kLessEqual;
    c.rhs = inst.matroid->Rank(s);
    p.constraints.push_back(std::move(c));
  }
  for (int i = 0; i < n; ++i) {
    lp::Constraint c;
    c.coefficients.assign(n, 0.0);
    c.coefficients[i] = 1.0;
    c.sense = lp::Sense::kLessEqual;
    c.rhs = inst.p[i];
    p.constraints.push_back(std::move(c));
  }
  const lp::Solution sol = lp::Maximize(p);
  if (sol.status != lp::Status::kOptimal) {
    throw ConvergenceError("rank-constraint LP: " + lp::StatusName(sol.status), 0.0);
  }
  return sol.objective;
}

// --- experiments -------------------------------------------------------------

nlohmann::json OptimalityExperiments(const ExperimentOptions& options) {
  nlohmann::json out;
  {
    const double eps = 0.01;
    auto m = std::make_shared<UniformMatroid>(2, 1);
    const std::vector<double> x{1.0 - eps, eps};
    BuildOptions exact;
    exact.to_optimality = true;
    exact.separation.optimal = true;
    const RandomizedCrs best = BuildRandomizedCrs(m, x, ArrivalMode::kFixed, {},
                                                  0.5, exact);
    const RandomizedCrs built = BuildRandomizedCrs(m, x, ArrivalMode::kFixed, {}, 0.5);
    const double ceiling = 0.5 + eps / 2.0;
    out["two_element"] = {{"x", x},
                          {"lp_optimum", best.c},
                          {"ceiling", ceiling},
                          {"threshold_build_c", built.c},
                          {"pass", best.c >= 0.5 - 1e-6 && best.c <= ceiling + 1e-6}};
  }
  nlohmann::json rows = nlohmann::json::array();
  bool all = true;
  for (int n : {2, 5, 10}) {
    std::vector<double> x(n, 1.0 / n);
    std::vector<double> w(std::size_t{1} << n);
    kernels::PatternWeights(x, w);
    const double none = w[0];
    const double analytic = std::pow(1.0 - 1.0 / n, n);
    const double ceiling = 1.0 - analytic;
    MeasureOptions mo;
    mo.trials = options.trials;
    mo.seed = options.seed;
    mo.workers = options.workers;
    const SelectabilityReport rep =
        EstimateSelectability(*MakeExponentialRcrsScheme(x), x, mo);
    double any = 0.0;
    for (const auto& e : rep.elements) any += e.p_select;
    const double se = std::sqrt(any * (1.0 - any) / options.trials);
    const double average = any;  // mean of p_i / x_i with x_i = 1/n
    const bool pass = std::abs(none - analytic) <= 1e-12 &&
                      average <= ceiling + options.sigma * se;
    all = all && pass;
    rows.push_back({{"n", n},
                    {"pr_none_enumerated", none},
                    {"pr_none_analytic", analytic},
                    {"ceiling", ceiling},
                    {"rcrs_average_selectability", average},
                    {"se", se},
                    {"pass", pass}});
  }
  out["uniform_rank1"] = std::move(rows);
  nlohmann::json series = nlohmann::json::array();
  double prev = 1.0;
  bool monotone = true;
  for (int n : {2, 5, 10, 20, 50}) {
    const double c = 1.0 - std::pow(1.0 - 1.0 / n, n);
    monotone = monotone && c <= prev;
    prev = c;
    series.push_back({{"n", n}, {"ceiling", c}});
  }
  out["ceiling_series"] = std::move(series);
  out["ceiling_limit"] = 1.0 - std::exp(-1.0);
  out["ceiling_monotone"] = monotone;
  out["pass"] = out["two_element"]["pass"].get<bool>() && all && monotone;
  return out;
}

nlohmann::json HatRegression(const ExperimentOptions& options, int max_hats) {
  nlohmann::json out;
  nlohmann::json curve = nlohmann::json::array();
  double prev = 1.0;
  bool decreasing = true;
  for (int hats = 1; hats <= max_hats; ++hats) {
    HatExample h = MakeHat(hats);
    const SchemePtr greedy = MakeGreedyScheme(h.matroid);
    MeasureOptions mo;
    mo.seed = options.seed;
    mo.workers = options.workers;
    mo.trials = std::min<std::int64_t>(options.trials, 200000);
    const int n = h.matroid->size();
    const SelectabilityReport rep = n <= mo.fixed_cap
                                        ? ExactSelectability(*greedy, h.x, mo)
                                        : EstimateSelectability(*greedy, h.x, mo);
    const double base = rep.elements[h.base].p_select / h.x[h.base];
    decreasing = decreasing && base <= prev + 1e-12;
    prev = base;
    curve.push_back({{"hats", hats},
                     {"base_selectability", base},
                     {"mode", rep.exact() ? "exact" : "estimate"},
                     {"se", rep.elements[h.base].se}});
  }
  out["greedy_curve"] = std::move(curve);
  out["greedy_decreasing"] = decreasing;

  HatExample h2 = MakeHat(2);
  const RandomizedCrs lp = BuildRandomizedCrs(h2.matroid, h2.x, ArrivalMode::kFixed,
                                              {}, 0.5);
  const MixtureCheck check = VerifyMixture(lp);
  out["lp_ocrs"] = {{"hats", 2}, {"certified_c", lp.c}, {"verified_min_ratio", check.min_ratio},
                    {"policies", lp.policies.size()}, {"pass", lp.c >= 0.5 - 1e-6 && check.ok}};

  BernoulliInstance inst{h2.matroid, h2.x, std::vector<double>(h2.x.size(), 1.0)};
  auto alg = std::make_shared<ProphetAlgorithm>(MakeProphetAlgorithm(inst));
  const SchemePtr adv = MakeThresholdScheme(alg, ArrivalMode::kFixed);
  const OrderValue worst = WorstOrder(*adv, inst.p, inst.y, {6, 1000, options.seed, options.workers});
  MeasureOptions mo;
  mo.trials = std::min<std::int64_t>(options.trials, 100000);
  mo.seed = options.seed;
  mo.workers = options.workers;
  mo.order = worst.order;
  const RatioReport ratio = MeasureRatio(*adv, inst.p, inst.y, alg->solution().objective, mo);
  const bool ratio_ok = ratio.mean_alg >= 0.5 * ratio.objective - options.sigma * ratio.se;
  out["prophet"] = {{"hats", 2},
                    {"worst_order", worst.order},
                    {"worst_exact_value", worst.value},
                    {"objective", ratio.objective},
                    {"mc", ratio.ToJson()},
                    {"pass", ratio_ok}};
  out["pass"] = decreasing && out["lp_ocrs"]["pass"].get<bool>() && ratio_ok;
  return out;
}

}  // namespace ocrs
