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

#include "ocrs/exante.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "ocrs/errors.h"
#include "ocrs/lp.h"

namespace ocrs {
namespace {

constexpr int kMaxFractionalOwners = 22;

double BoxRankUniform(int rank, std::vector<double> caps) {
  std::sort(caps.begin(), caps.end(), std::greater<>());
  double suffix = std::accumulate(caps.begin(), caps.end(), 0.0);
  double best = suffix;
  for (std::size_t j = 0; j < caps.size(); ++j) {
    suffix -= caps[j];
    best = std::min(best, std::min<double>(j + 1, rank) + std::max(0.0, suffix));
  }
  return best;
}

// min over owner sets O of rank(O) + sum of totals outside O.
double BoxRank(const Matroid& m, const std::vector<double>& totals) {
  if (const auto* u = dynamic_cast<const UniformMatroid*>(&m)) {
    std::vector<double> caps;
    for (double t : totals) {
      if (t > 0.0) caps.push_back(t);
    }
    return BoxRankUniform(u->rank_bound(), std::move(caps));
  }
  if (const auto* pm = dynamic_cast<const PartitionMatroid*>(&m)) {
    double total = 0.0;
    for (std::size_t b = 0; b < pm->blocks().size(); ++b) {
      std::vector<double> caps;
      for (int e : pm->blocks()[b]) {
        if (totals[e] > 0.0) caps.push_back(totals[e]);
      }
      total += BoxRankUniform(pm->capacities()[b], std::move(caps));
    }
    return total;
  }
  const int n = m.size();
  ElementSet forced(n);
  std::vector<Element> fractional;
  for (int e = 0; e < n; ++e) {
    if (totals[e] >= 1.0) {
      forced.insert(e);
    } else if (totals[e] > 0.0) {
      fractional.push_back(e);
    }
  }
  const int f = static_cast<int>(fractional.size());
  if (f > kMaxFractionalOwners) {
    throw CapExceededError("ex-ante greedy: " + std::to_string(f) +
                           " fractional elements exceed the enumeration cap");
  }
  double best = std::numeric_limits<double>::infinity();
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << f); ++mask) {
    ElementSet o = forced;
    double outside = 0.0;
    for (int k = 0; k < f; ++k) {
      if (mask >> k & 1) {
        o.insert(fractional[k]);
      } else {
        outside += totals[fractional[k]];
      }
    }
    best = std::min(best, m.Rank(o) + outside);
  }
  return best;
}

lp::Problem DecompositionLp(const std::vector<ElementSet>& columns,
                            std::span<const double> x) {
  const int n = static_cast<int>(x.size());
  const int k = static_cast<int>(columns.size());
  lp::Problem p;
  p.objective.assign(k + n, 0.0);
  for (int i = 0; i < n; ++i) p.objective[k + i] = -1.0;
  for (int i = 0; i < n; ++i) {
    lp::Constraint c;
    c.coefficients.assign(k + n, 0.0);
    for (int j = 0; j < k; ++j) {
      if (columns[j].contains(i)) c.coefficients[j] = 1.0;
    }
    c.coefficients[k + i] = 1.0;
    c.sense = lp::Sense::kEqual;
    c.rhs = x[i];
    p.constraints.push_back(std::move(c));
  }
  lp::Constraint convex;
  convex.coefficients.assign(k + n, 0.0);
  for (int j = 0; j < k; ++j) convex.coefficients[j] = 1.0;
  convex.sense = lp::Sense::kEqual;
  convex.rhs = 1.0;
  p.constraints.push_back(std::move(convex));
  return p;
}

}  // namespace

std::vector<double> Decomposition::Marginals(int n) const {
  std::vector<double> m(n, 0.0);
  for (std::size_t j = 0; j < sets.size(); ++j) {
    sets[j].for_each([&](Element e) { m[e] += weights[j]; });
  }
  return m;
}

std::vector<double> PolymatroidGreedy(const Matroid& m,
                                      std::span<const CappedItem> items) {
  const int n = m.size();
  for (const CappedItem& it : items) {
    if (it.owner < 0 || it.owner >= n) {
      throw InputError("greedy item owner out of range");
    }
    if (!(it.cap >= 0.0) || !(it.value >= 0.0)) {
      throw InputError("greedy item cap and value must be >= 0");
    }
  }
  std::vector<std::size_t> order(items.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (items[a].value != items[b].value) return items[a].value > items[b].value;
    return items[a].owner < items[b].owner;
  });
  std::vector<double> amount(items.size(), 0.0);
  std::vector<double> totals(n, 0.0);
  double prev = 0.0;
  for (std::size_t idx : order) {
    const CappedItem& it = items[idx];
    if (it.cap == 0.0) continue;
    totals[it.owner] += it.cap;
    const double cur = BoxRank(m, totals);
    const double z = std::clamp(cur - prev, 0.0, it.cap);
    amount[idx] = z;
    // Keep only what was granted so later box ranks see the true totals.
    totals[it.owner] += z - it.cap;
    prev += z;
  }
  return amount;
}

double MatroidPolytopeViolation(const Matroid& m, std::span<const double> x) {
  const int n = m.size();
  if (n > ExplicitMatroid::kMaxElements) {
    throw CapExceededError("polytope check limited to 20 elements");
  }
  double worst = 0.0;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
    ElementSet s = ElementSet::FromMask(n, mask);
    worst = std::max(worst, SetWeight(s, x) - m.Rank(s));
  }
  return worst;
}

ExAnteSolution SolveExAnte(const BernoulliInstance& inst) {
  inst.Validate();
  const int n = inst.size();
  std::vector<CappedItem> items(n);
  for (int i = 0; i < n; ++i) items[i] = {i, inst.p[i], inst.y[i]};
  ExAnteSolution sol;
  sol.x = PolymatroidGreedy(*inst.matroid, items);
  sol.y = inst.y;
  for (int i = 0; i < n; ++i) sol.objective += sol.x[i] * sol.y[i];
  return sol;
}

GeneralExAnte SolveExAnte(const GeneralInstance& inst) {
  inst.Validate();
  const int n = inst.size();
  std::vector<CappedItem> items;
  for (int i = 0; i < n; ++i) {
    for (const Atom& a : inst.dists[i].atoms()) {
      items.push_back({i, a.probability, a.value});
    }
  }
  const std::vector<double> amount = PolymatroidGreedy(*inst.matroid, items);
  GeneralExAnte out;
  out.solution.x.assign(n, 0.0);
  for (std::size_t k = 0; k < items.size(); ++k) {
    out.solution.x[items[k].owner] += amount[k];
  }
  out.solution.y.assign(n, 0.0);
  for (int i = 0; i < n; ++i) {
    double& xi = out.solution.x[i];
    xi = std::clamp(xi, 0.0, 1.0);
    out.rules.push_back(BuildQuantileRule(inst.dists[i], xi, i));
    out.solution.y[i] = out.rules.back().conditional_value;
    out.solution.objective += xi * out.solution.y[i];
  }
  out.reduced.matroid = inst.matroid;
  out.reduced.p = out.solution.x;
  out.reduced.y = out.solution.y;
  return out;
}

Decomposition Decompose(std::span<const double> x, const Matroid& m,
                        const DecomposeOptions& options) {
  const int n = m.size();
  if (static_cast<int>(x.size()) != n) {
    throw InputError("x has " + std::to_string(x.size()) +
                     " entries, matroid has " + std::to_string(n));
  }
  for (double v : x) {
    if (!(v >= 0.0 && v <= 1.0)) throw InputError("x must lie in [0, 1]");
  }
  const int max_columns = options.max_columns > 0 ? options.max_columns
                                                  : std::max(50 * n, 2);
  std::vector<ElementSet> columns{ElementSet(n)};
  ElementSet first = MaxWeightIndependentSet(m, x);
  if (!first.empty()) columns.push_back(first);

  auto residual_of = [&](const Decomposition& d) {
    const std::vector<double> marg = d.Marginals(n);
    double r = 0.0;
    for (int i = 0; i < n; ++i) r = std::max(r, std::abs(marg[i] - x[i]));
    return r;
  };

  Decomposition dec;
  double residual = 1.0;
  while (true) {
    const lp::Solution sol = lp::Maximize(DecompositionLp(columns, x));
    if (sol.status != lp::Status::kOptimal) {
      throw ConvergenceError(
          "decomposition LP ended with status " + lp::StatusName(sol.status),
          residual);
    }
    const int k = static_cast<int>(columns.size());
    dec.sets.clear();
    dec.weights.clear();
    for (int j = 0; j < k; ++j) {
      if (sol.primal[j] > 1e-15) {
        dec.sets.push_back(columns[j]);
        dec.weights.push_back(sol.primal[j]);
      }
    }
    residual = residual_of(dec);
    if (residual <= options.marginal_tolerance) break;

    // Price: a column I improves iff sum_{i in I} u_i + w < 0.
    std::vector<double> price(n);
    for (int i = 0; i < n; ++i) price[i] = std::max(0.0, -sol.duals[i]);
    const ElementSet best = MaxWeightIndependentSet(m, price);
    const double reduced = SetWeight(best, price) - sol.duals[n];
    if (reduced <= options.pricing_tolerance) {
      std::ostringstream msg;
      msg << "x is outside the matroid polytope (residual " << residual << ")";
      throw InfeasibleError(msg.str());
    }
    if (std::find(columns.begin(), columns.end(), best) != columns.end() ||
        k >= max_columns) {
      throw ConvergenceError("decomposition did not converge", residual);
    }
    columns.push_back(best);
  }
  double total = std::accumulate(dec.weights.begin(), dec.weights.end(), 0.0);
  for (double& w : dec.weights) w /= total;
  return dec;
}

std::size_t SampleSetIndex(const Decomposition& dec, Rng& rng) {
  const double u = rng.uniform();
  double cum = 0.0;
  for (std::size_t j = 0; j < dec.weights.size(); ++j) {
    cum += dec.weights[j];
    if (u < cum) return j;
  }
  return dec.weights.empty() ? 0 : dec.weights.size() - 1;
}

std::vector<double> CorrelatedValues(const ElementSet& support,
                                     std::span<const double> y) {
  std::vector<double> v(y.size(), 0.0);
  support.for_each([&](Element e) { v[e] = y[e]; });
  return v;
}

std::vector<double> SampleCorrelated(const Decomposition& dec,
                                     std::span<const double> y, Rng& rng) {
  if (dec.sets.empty()) return std::vector<double>(y.size(), 0.0);
  return CorrelatedValues(dec.sets[SampleSetIndex(dec, rng)], y);
}

double RemainingValue(const Matroid& m, const ElementSet& accepted,
                      std::span<const double> values) {
  const ElementSet basis = m.Basis(accepted);
  return SetWeight(MaxWeightIndependentSetContracted(m, basis, values), values);
}

BasePriceOracle::BasePriceOracle(MatroidPtr matroid, Decomposition dec,
                                 std::vector<double> y)
    : matroid_(std::move(matroid)), dec_(std::move(dec)), y_(std::move(y)) {
  if (static_cast<int>(y_.size()) != matroid_->size()) {
    throw InputError("value vector does not match the matroid size");
  }
}

std::vector<double> BasePriceOracle::FixedValueThresholds(
    const Matroid& m, const ElementSet& accepted,
    std::span<const double> values) {
  const int n = m.size();
  const ElementSet basis = m.Basis(accepted);
  const double base = SetWeight(
      MaxWeightIndependentSetContracted(m, basis, values), values);
  std::vector<double> out(n, 0.0);
  std::vector<double> w(values.begin(), values.end());
  for (int i = 0; i < n; ++i) {
    if (accepted.contains(i)) continue;
    const ElementSet with_i = basis.with(i);
    const ElementSet next = m.IsIndependent(with_i) ? with_i : basis;
    const double saved = w[i];
    w[i] = 0.0;
    out[i] = base - SetWeight(MaxWeightIndependentSetContracted(m, next, w), w);
    w[i] = saved;
  }
  return out;
}

std::vector<double> BasePriceOracle::Compute(const ElementSet& accepted) const {
  const int n = matroid_->size();
  std::vector<double> prices(n, 0.0);
  for (std::size_t j = 0; j < dec_.sets.size(); ++j) {
    const std::vector<double> v = CorrelatedValues(dec_.sets[j], y_);
    const std::vector<double> t = FixedValueThresholds(*matroid_, accepted, v);
    for (int i = 0; i < n; ++i) prices[i] += dec_.weights[j] * t[i];
  }
  return prices;
}

const std::vector<double>& BasePriceOracle::Prices(
    const ElementSet& accepted) const {
  {
    std::shared_lock lock(mu_);
    auto it = memo_.find(accepted);
    if (it != memo_.end()) return it->second;
  }
  std::vector<double> prices = Compute(accepted);
  std::unique_lock lock(mu_);
  return memo_.try_emplace(accepted, std::move(prices)).first->second;
}

std::size_t BasePriceOracle::memo_size() const {
  std::shared_lock lock(mu_);
  return memo_.size();
}

EstimatedPrices EstimateBasePrices(const Matroid& m, const ElementSet& accepted,
                                   const Decomposition& dec,
                                   std::span<const double> y, int samples,
                                   Rng& rng) {
  if (samples < 2) throw InputError("need at least 2 samples");
  const int n = m.size();
  std::vector<double> sum(n, 0.0), sum_sq(n, 0.0);
  for (int s = 0; s < samples; ++s) {
    const std::vector<double> v = SampleCorrelated(dec, y, rng);
    const std::vector<double> t =
        BasePriceOracle::FixedValueThresholds(m, accepted, v);
    for (int i = 0; i < n; ++i) {
      sum[i] += t[i];
      sum_sq[i] += t[i] * t[i];
    }
  }
  EstimatedPrices out;
  out.samples = samples;
  out.mean.resize(n);
  out.standard_error.resize(n);
  for (int i = 0; i < n; ++i) {
    const double mean = sum[i] / samples;
    const double var =
        std::max(0.0, (sum_sq[i] - samples * mean * mean) / (samples - 1));
    out.mean[i] = mean;
    out.standard_error[i] = std::sqrt(var / samples);
  }
  return out;
}

nlohmann::json ExAnteToJson(const ExAnteSolution& sol,
                            const Decomposition& dec) {
  nlohmann::json j;
  j["x"] = sol.x;
  j["y"] = sol.y;
  j["objective"] = sol.objective;
  nlohmann::json sets = nlohmann::json::array();
  for (std::size_t k = 0; k < dec.sets.size(); ++k) {
    sets.push_back({{"set", dec.sets[k].elements()}, {"weight", dec.weights[k]}});
  }
  j["decomposition"] = std::move(sets);
  return j;
}

void ExAnteFromJson(const nlohmann::json& j, int n, ExAnteSolution& sol,
                    Decomposition& dec) {
  try {
    sol.x = j.at("x").get<std::vector<double>>();
    sol.y = j.at("y").get<std::vector<double>>();
    sol.objective = j.at("objective").get<double>();
    dec = Decomposition{};
    for (const auto& entry : j.at("decomposition")) {
      const auto elems = entry.at("set").get<std::vector<Element>>();
      dec.sets.emplace_back(n, std::span<const Element>(elems));
      dec.weights.push_back(entry.at("weight").get<double>());
    }
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("bad ex-ante record: ") + e.what());
  }
  if (static_cast<int>(sol.x.size()) != n || static_cast<int>(sol.y.size()) != n) {
    throw InputError("ex-ante record does not match the instance size");
  }
}

std::string ContentHash(const nlohmann::json& j) {
  const std::string s = j.dump();
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace ocrs
