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

#include "ocrs/acceptance.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <functional>
#include <limits>
#include <memory>
#include <numeric>
#include <sstream>

#include "ocrs/corpus.h"
#include "ocrs/errors.h"
#include "ocrs/exante.h"
#include "ocrs/harness.h"
#include "ocrs/instance.h"
#include "ocrs/lpcrs.h"
#include "ocrs/schemes.h"

namespace ocrs {
namespace {

const double kRandomTarget = 1.0 - std::exp(-1.0);

struct Context {
  const AcceptanceOptions& opt;
  std::int64_t Trials(std::int64_t fallback) const {
    return opt.trials > 0 ? opt.trials : fallback;
  }
  Rng Stream(int criterion, std::uint64_t k) const {
    return Rng::Substream(opt.seed * 1000003ull + criterion, k);
  }
};

std::string Fmt(double v, int digits = 6) {
  std::ostringstream s;
  s.precision(digits);
  s << v;
  return s.str();
}

std::vector<Element> RandomOrder(int n, Rng& rng) {
  std::vector<Element> o(n);
  std::iota(o.begin(), o.end(), 0);
  std::shuffle(o.begin(), o.end(), rng.engine());
  return o;
}

// Hat(2) with unit values plus 20 seeded partition and graphic instances.
std::vector<std::pair<std::string, BernoulliInstance>> ProphetCorpus(const Context& ctx) {
  std::vector<std::pair<std::string, BernoulliInstance>> out;
  HatExample h = MakeHat(2);
  out.push_back({"hat2", BernoulliInstance{h.matroid, h.x,
                                           std::vector<double>(h.x.size(), 1.0)}});
  for (int k = 0; k < 20; ++k) {
    Rng rng = ctx.Stream(3, k);
    const int n = 4 + static_cast<int>(rng.below(7));
    MatroidPtr m = k % 2 == 0 ? RandomPartitionMatroid(n, rng)
                              : RandomGraphicMatroid(n, rng);
    out.push_back({(k % 2 == 0 ? "partition" : "graphic") + std::to_string(k),
                   RandomBernoulliInstance(m, rng)});
  }
  return out;
}

// 1. Rank-1 magician scheme, exact.
bool Criterion1(const Context& ctx, CriterionResult& r) {
  bool ok = true;
  double worst_margin = std::numeric_limits<double>::infinity();
  int vectors = 0;
  for (int k = 0; k < 50; ++k) {
    Rng rng = ctx.Stream(1, k);
    const int n = 1 + static_cast<int>(rng.below(12));
    const std::vector<double> x = RandomRank1Point(n, rng);
    const std::vector<Element> order = RandomOrder(n, rng);
    const MagicianState st = BuildMagician(x, order);
    const double sum = std::accumulate(x.begin(), x.end(), 0.0);
    const double endpoint = 1.0 - 0.5 * sum;
    if (std::abs(st.reach[n] - endpoint) > 1e-12 || st.reach[n] < 0.5 - 1e-15) ok = false;
    MeasureOptions mo;
    mo.order = order;
    mo.workers = ctx.opt.workers;
    const SelectabilityReport rep = ExactSelectability(*MakeMagicianScheme(x), x, mo);
    for (const auto& e : rep.elements) {
      const double margin = e.p_select - 0.5 * e.x;
      worst_margin = std::min(worst_margin, margin);
      if (margin < -1e-9) ok = false;
    }
    ++vectors;
  }
  r.summary = std::to_string(vectors) + " vectors, min(p_i - x_i/2) = " + Fmt(worst_margin);
  r.details = {{"vectors", vectors}, {"min_margin", worst_margin}};
  return ok;
}

// 2. Rank-1 exponential scheme, Monte Carlo.
bool Criterion2(const Context& ctx, CriterionResult& r) {
  bool ok = true;
  const double sigma = ctx.opt.sigma;
  double worst_z = std::numeric_limits<double>::infinity();
  nlohmann::json rows = nlohmann::json::array();
  for (int n : {2, 5, 10}) {
    std::vector<double> x(n, 1.0 / n);
    MeasureOptions mo;
    mo.trials = ctx.Trials(1000000);
    mo.seed = ctx.opt.seed + n;
    mo.workers = ctx.opt.workers;
    const SelectabilityReport rep = EstimateSelectability(*MakeExponentialRcrsScheme(x), x, mo);
    for (const auto& e : rep.elements) {
      const double bound = kRandomTarget * e.x;
      if (e.p_select < bound - sigma * e.se) ok = false;
      if (e.se > 0) worst_z = std::min(worst_z, (e.p_select - bound) / e.se);
    }
    rows.push_back({{"n", n}, {"c_hat", rep.c}, {"c_lower", rep.LowerC(sigma)}});
  }
  const std::vector<double> one{1.0};
  MeasureOptions mo;
  mo.trials = ctx.Trials(1000000);
  mo.seed = ctx.opt.seed + 1;
  mo.workers = ctx.opt.workers;
  const SelectabilityReport single = EstimateSelectability(*MakeExponentialRcrsScheme(one), one, mo);
  const auto& s = single.elements[0];
  const bool single_ok = std::abs(s.p_select - kRandomTarget) <= sigma * s.se;
  ok = ok && single_ok;
  rows.push_back({{"n", 1}, {"p_hat", s.p_select}, {"se", s.se}, {"closed_form", kRandomTarget}});
  r.summary = "min z = " + Fmt(worst_z, 4) + ", single element p = " + Fmt(s.p_select) +
              " vs " + Fmt(kRandomTarget);
  r.details = std::move(rows);
  return ok;
}

bool ProphetCriterion(const Context& ctx, CriterionResult& r, ArrivalMode mode) {
  const double factor = mode == ArrivalMode::kFixed ? 0.5 : kRandomTarget;
  bool ok = true;
  double worst = std::numeric_limits<double>::infinity();
  nlohmann::json rows = nlohmann::json::array();
  int k = 0;
  for (auto& [name, inst] : ProphetCorpus(ctx)) {
    auto alg = std::make_shared<ProphetAlgorithm>(MakeProphetAlgorithm(inst));
    const SchemePtr scheme = MakeThresholdScheme(alg, mode);
    MeasureOptions mo;
    mo.trials = ctx.Trials(100000);
    mo.seed = ctx.opt.seed + 7919 * (k++);
    mo.workers = ctx.opt.workers;
    nlohmann::json row{{"instance", name}, {"n", inst.size()}};
    if (mode == ArrivalMode::kFixed) {
      WorstOrderOptions wo;
      wo.seed = mo.seed;
      wo.workers = ctx.opt.workers;
      const OrderValue w = WorstOrder(*scheme, inst.p, inst.y, wo);
      mo.order = w.order;
      row["orders_checked"] = w.orders_checked;
      row["worst_exact"] = w.value;
    }
    const RatioReport rep = MeasureRatio(*scheme, inst.p, inst.y, alg->solution().objective, mo);
    const double lhs = rep.mean_alg + ctx.opt.sigma * rep.se;
    const bool pass = lhs >= factor * rep.objective - 1e-12;
    ok = ok && pass;
    if (rep.objective > 0) worst = std::min(worst, rep.mean_alg / rep.objective);
    row["objective"] = rep.objective;
    row["mean_alg"] = rep.mean_alg;
    row["se"] = rep.se;
    row["pass"] = pass;
    rows.push_back(std::move(row));
  }
  r.summary = std::to_string(rows.size()) + " instances, min E[Alg]/objective = " + Fmt(worst) +
              " (need " + Fmt(factor) + " - " + Fmt(ctx.opt.sigma, 2) + " SE)";
  r.details = std::move(rows);
  return ok;
}

// 5. LP-duality construction.
bool Criterion5(const Context& ctx, CriterionResult& r) {
  struct Case {
    std::string name;
    MatroidPtr m;
    std::vector<double> x;
  };
  std::vector<Case> cases;
  auto rank1 = [](int n) { return std::make_shared<UniformMatroid>(n, 1); };
  cases.push_back({"rank1_pair", rank1(2), {0.5, 0.5}});
  cases.push_back({"rank1_skewed", rank1(2), {0.99, 0.01}});
  cases.push_back({"rank1_uniform5", rank1(5), std::vector<double>(5, 0.2)});
  {
    Rng rng = ctx.Stream(5, 0);
    cases.push_back({"rank1_random4", rank1(4), RandomRank1Point(4, rng)});
  }
  {
    Rng rng = ctx.Stream(5, 1);
    auto m = std::make_shared<UniformMatroid>(4, 2);
    cases.push_back({"uniform4_rank2", m, RandomPolytopePoint(*m, rng)});
  }
  cases.push_back({"uniform5_rank2", std::make_shared<UniformMatroid>(5, 2),
                   std::vector<double>(5, 0.4)});
  cases.push_back({"uniform3_rank2", std::make_shared<UniformMatroid>(3, 2),
                   {1.0, 0.5, 0.5}});
  for (int n : {6, 7}) {
    Rng rng = ctx.Stream(5, n);
    auto m = RandomPartitionMatroid(n, rng);
    cases.push_back({"partition" + std::to_string(n), m, RandomPolytopePoint(*m, rng)});
  }
  {
    HatExample h = MakeHat(2);
    cases.push_back({"hat2", h.matroid, h.x});
  }
  bool ok = true;
  double min_fixed = std::numeric_limits<double>::infinity();
  double min_random = std::numeric_limits<double>::infinity();
  nlohmann::json rows = nlohmann::json::array();
  for (const Case& c : cases) {
    BuildOptions bo;
    bo.separation.q.seed = ctx.opt.seed;
    const RandomizedCrs fixed = BuildRandomizedCrs(c.m, c.x, ArrivalMode::kFixed, {}, 0.5, bo);
    const MixtureCheck check = VerifyMixture(fixed);
    bool fixed_ok = fixed.c >= 0.5 - 1e-6;
    for (std::size_t i = 0; i < c.x.size(); ++i) {
      if (check.q[i] < (0.5 - 1e-6) * c.x[i]) fixed_ok = false;
    }
    min_fixed = std::min(min_fixed, fixed.c);
    nlohmann::json row{{"instance", c.name},
                       {"n", c.m->size()},
                       {"fixed_c", fixed.c},
                       {"fixed_policies", fixed.policies.size()},
                       {"fixed_iterations", fixed.history.size()},
                       {"verified_min_ratio", check.min_ratio}};
    bool random_ok = true;
    if (c.m->size() <= 5) {
      BuildOptions ro = bo;
      ro.epsilon = 1e-4;
      const RandomizedCrs random =
          BuildRandomizedCrs(c.m, c.x, ArrivalMode::kRandom, {}, kRandomTarget, ro);
      const MixtureCheck rcheck = VerifyMixture(random);
      random_ok = random.c >= kRandomTarget - 1e-4 && rcheck.ok;
      min_random = std::min(min_random, random.c);
      row["random_c"] = random.c;
      row["random_policies"] = random.policies.size();
      row["random_fallbacks"] = random.fallbacks;
    }
    row["pass"] = fixed_ok && random_ok;
    ok = ok && fixed_ok && random_ok;
    rows.push_back(std::move(row));
  }
  r.summary = std::to_string(cases.size()) + " instances, min fixed c = " + Fmt(min_fixed, 8) +
              ", min random c = " + Fmt(min_random, 8);
  r.details = std::move(rows);
  return ok;
}

// 6. Optimality ceilings.
bool Criterion6(const Context& ctx, CriterionResult& r) {
  ExperimentOptions eo;
  eo.trials = ctx.Trials(1000000);
  eo.seed = ctx.opt.seed;
  eo.workers = ctx.opt.workers;
  eo.sigma = ctx.opt.sigma;
  r.details = OptimalityExperiments(eo);
  r.summary = "two-element c* = " + Fmt(r.details["two_element"]["lp_optimum"].get<double>(), 8) +
              " (ceiling " + Fmt(r.details["two_element"]["ceiling"].get<double>()) + ")";
  return r.details["pass"].get<bool>();
}

// 7. Oracle equivalence.
bool Criterion7(const Context& ctx, CriterionResult& r) {
  bool ok = true;
  double worst_gap = 0.0, worst_marginal = 0.0, worst_dominance = 0.0;
  int checked = 0, dominance_checked = 0;
  auto dominance = [&](const BernoulliInstance& inst, double objective) {
    if (inst.size() > 12) return;
    const double offline = BruteForceOffline(inst);
    worst_dominance = std::min(worst_dominance, objective - offline);
    if (objective < offline - 1e-9) ok = false;
    ++dominance_checked;
  };
  auto marginals = [&](const BernoulliInstance& inst, const ExAnteSolution& sol) {
    const Decomposition dec = Decompose(sol.x, *inst.matroid);
    const std::vector<double> marg = dec.Marginals(inst.size());
    for (int i = 0; i < inst.size(); ++i) {
      worst_marginal = std::max(worst_marginal, std::abs(marg[i] - sol.x[i]));
    }
    for (const ElementSet& s : dec.sets) {
      if (!inst.matroid->IsIndependent(s)) ok = false;
    }
  };
  for (int k = 0; k < 50; ++k) {
    Rng rng = ctx.Stream(7, k);
    const int n = 2 + static_cast<int>(rng.below(5));
    const int dim = 1 + static_cast<int>(rng.below(4));
    BernoulliInstance inst = RandomBernoulliInstance(RandomBinaryMatroid(n, dim, rng), rng);
    const ExAnteSolution sol = SolveExAnte(inst);
    const double lp = ExAnteLpOptimum(inst);
    worst_gap = std::max(worst_gap, std::abs(lp - sol.objective));
    if (std::abs(lp - sol.objective) > 1e-9) ok = false;
    marginals(inst, sol);
    dominance(inst, sol.objective);
    ++checked;
  }
  for (auto& [name, inst] : ProphetCorpus(ctx)) {
    const ExAnteSolution sol = SolveExAnte(inst);
    marginals(inst, sol);
    dominance(inst, sol.objective);
  }
  if (!ctx.opt.corpus_dir.empty() && std::filesystem::is_directory(ctx.opt.corpus_dir)) {
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(ctx.opt.corpus_dir)) {
      if (entry.path().extension() == ".json") files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    for (const auto& f : files) {
      const InstanceFile file = LoadInstanceFile(f.string());
      if (file.bernoulli) {
        const ExAnteSolution sol = SolveExAnte(*file.bernoulli);
        marginals(*file.bernoulli, sol);
        dominance(*file.bernoulli, sol.objective);
      } else if (file.general && file.general->size() <= 12) {
        const GeneralExAnte g = SolveExAnte(*file.general);
        const double offline = BruteForceOffline(*file.general);
        worst_dominance = std::min(worst_dominance, g.solution.objective - offline);
        if (g.solution.objective < offline - 1e-9) ok = false;
        ++dominance_checked;
      }
    }
  }
  if (worst_marginal > 1e-8) ok = false;
  r.summary = std::to_string(checked) + " explicit matroids, max |greedy - LP| = " +
              Fmt(worst_gap, 3) + ", max marginal error = " + Fmt(worst_marginal, 3) +
              ", " + std::to_string(dominance_checked) + " dominance checks";
  r.details = {{"explicit_instances", checked},
               {"max_gap", worst_gap},
               {"max_marginal_error", worst_marginal},
               {"dominance_checks", dominance_checked},
               {"min_objective_minus_offline", worst_dominance}};
  return ok;
}

MatroidPtr SmallRandomMatroid(Rng& rng, int n) {
  switch (rng.below(3)) {
    case 0:
      return RandomPartitionMatroid(n, rng);
    case 1:
      return RandomGraphicMatroid(n, rng);
    default:
      return RandomBinaryMatroid(n, 1 + static_cast<int>(rng.below(4)), rng);
  }
}

// 8. Structural invariants.
bool Criterion8(const Context& ctx, CriterionResult& r) {
  int traces = 0, violations = 0;
  double worst_identity = 0.0;
  for (int k = 0; traces < 10000; ++k) {
    Rng rng = ctx.Stream(8, k);
    const int n = 3 + static_cast<int>(rng.below(6));
    BernoulliInstance inst = RandomBernoulliInstance(SmallRandomMatroid(rng, n), rng);
    const ProphetAlgorithm alg = MakeProphetAlgorithm(inst);
    for (int t = 0; t < 100; ++t, ++traces) {
      const ElementSet active = SampleActiveSet(inst.p, rng);
      const SelectionTrace trace =
          t % 2 == 0 ? alg.RunAdversarial(FixedArrival(RandomOrder(n, rng)), active)
                     : alg.RunRandomOrder(SampleUniformArrival(n, rng), active);
      const double gap = std::abs(trace.total - (trace.revenue + trace.utility));
      worst_identity = std::max(worst_identity, gap);
      if (gap > 1e-12 * std::max(1.0, std::abs(trace.total))) ++violations;
      ElementSet prefix(n);
      for (Element e : trace.accepted) {
        prefix.insert(e);
        if (!inst.matroid->IsIndependent(prefix)) ++violations;
      }
      for (const TraceStep& s : trace.steps) {
        if (s.accepted && (!s.active || !(s.value > *s.threshold))) ++violations;
      }
    }
  }
  // Base-price sum bound over every accepted set and every independent set
  // of the contraction.
  int bound_checks = 0;
  double worst_excess = -std::numeric_limits<double>::infinity();
  for (int k = 0; k < 8; ++k) {
    Rng rng = ctx.Stream(8, 100000 + k);
    const int n = 4 + static_cast<int>(rng.below(5));
    BernoulliInstance inst = RandomBernoulliInstance(SmallRandomMatroid(rng, n), rng);
    const Matroid& m = *inst.matroid;
    const ExAnteSolution sol = SolveExAnte(inst);
    const Decomposition dec = Decompose(sol.x, m);
    for (const ElementSet& support : dec.sets) {
      const std::vector<double> v = CorrelatedValues(support, sol.y);
      for (std::uint64_t a = 0; a < (std::uint64_t{1} << n); ++a) {
        const ElementSet accepted = ElementSet::FromMask(n, a);
        const ElementSet basis = m.Basis(accepted);
        const std::vector<double> th = BasePriceOracle::FixedValueThresholds(m, accepted, v);
        const double remaining = RemainingValue(m, accepted, v);
        for (std::uint64_t s = 0; s < (std::uint64_t{1} << n); ++s) {
          if (s & a) continue;
          const ElementSet set = ElementSet::FromMask(n, s);
          if (!m.IsIndependent(set | basis)) continue;
          double sum = 0.0;
          set.for_each([&](Element e) { sum += th[e]; });
          worst_excess = std::max(worst_excess, sum - remaining);
          if (sum > remaining + 1e-9) ++violations;
          ++bound_checks;
        }
      }
    }
  }
  r.summary = std::to_string(traces) + " traces, " + std::to_string(bound_checks) +
              " price-bound checks, " + std::to_string(violations) + " violations";
  r.details = {{"traces", traces},
               {"max_identity_gap", worst_identity},
               {"bound_checks", bound_checks},
               {"max_bound_excess", worst_excess},
               {"violations", violations}};
  return violations == 0;
}

// 9. Bernoulli reduction of discrete instances.
bool Criterion9(const Context& ctx, CriterionResult& r) {
  bool ok = true;
  const double sigma = ctx.opt.sigma;
  double worst_z = 0.0;
  nlohmann::json rows = nlohmann::json::array();
  for (int k = 0; k < 10; ++k) {
    Rng rng = ctx.Stream(9, k);
    const int n = 3 + static_cast<int>(rng.below(4));
    MatroidPtr m = k % 2 == 0 ? RandomPartitionMatroid(n, rng) : RandomGraphicMatroid(n, rng);
    const GeneralInstance inst = RandomGeneralInstance(m, rng);
    const GeneralExAnte g = SolveExAnte(inst);
    const Decomposition dec = Decompose(g.solution.x, *m);
    auto alg = std::make_shared<ProphetAlgorithm>(m, g.solution, dec);
    MeasureOptions mo;
    mo.trials = ctx.Trials(100000);
    mo.seed = ctx.opt.seed + 104729 * k;
    mo.workers = ctx.opt.workers;
    const GeneralRatioReport rep =
        MeasureGeneralRatio(*alg, inst, g.rules, ArrivalMode::kFixed, mo);
    bool pass = true;
    for (int i = 0; i < n; ++i) {
      const double diff = std::abs(rep.activation[i] - g.solution.x[i]);
      const double se = rep.activation_se[i];
      if (se > 0) worst_z = std::max(worst_z, diff / se);
      if (diff > sigma * se + 1e-12) pass = false;
    }
    const SchemePtr scheme = MakeThresholdScheme(alg, ArrivalMode::kFixed);
    const double reduced = ExactExpectedValue(*scheme, g.reduced.p, g.reduced.y, {});
    const double diff = std::abs(rep.ratio.mean_alg - reduced);
    if (rep.ratio.se > 0) worst_z = std::max(worst_z, diff / rep.ratio.se);
    if (diff > sigma * rep.ratio.se + 1e-12) pass = false;
    ok = ok && pass;
    rows.push_back({{"n", n},
                    {"objective", g.solution.objective},
                    {"general_mean_alg", rep.ratio.mean_alg},
                    {"general_se", rep.ratio.se},
                    {"reduced_exact_alg", reduced},
                    {"pass", pass}});
  }
  r.summary = "10 instances, max |deviation| / SE = " + Fmt(worst_z, 4);
  r.details = std::move(rows);
  return ok;
}

struct CriterionDef {
  int id;
  const char* name;
  const char* tags;
  double limit;
  std::function<bool(const Context&, CriterionResult&)> run;
};

}  // namespace

std::vector<CriterionResult> RunAcceptance(const AcceptanceOptions& options,
                                           std::ostream& out) {
  const std::vector<CriterionDef> defs{
      {1, "rank1-ocrs", "rank1 ocrs exact", 10, Criterion1},
      {2, "rank1-rcrs", "rank1 rcrs montecarlo", 60, Criterion2},
      {3, "prophet-adversarial", "prophet adversarial matroid", 300,
       [](const Context& c, CriterionResult& r) {
         return ProphetCriterion(c, r, ArrivalMode::kFixed);
       }},
      {4, "prophet-random-order", "prophet random matroid", 300,
       [](const Context& c, CriterionResult& r) {
         return ProphetCriterion(c, r, ArrivalMode::kRandom);
       }},
      {5, "lp-duality", "lp ocrs rcrs duality", 600, Criterion5},
      {6, "optimality", "optimality rank1 ceilings", 60, Criterion6},
      {7, "oracle-equivalence", "oracle exante decomposition", 120, Criterion7},
      {8, "structural-invariants", "invariants traces prices", 120, Criterion8},
      {9, "bernoulli-reduction", "reduction general", 120, Criterion9},
  };
  Context ctx{options};
  std::vector<CriterionResult> results;
  for (const CriterionDef& s : defs) {
    const std::string label = std::string(s.name) + " " + s.tags;
    if (!options.filter.empty() && label.find(options.filter) == std::string::npos) continue;
    CriterionResult r;
    r.id = s.id;
    r.name = s.name;
    r.tags = s.tags;
    r.limit_seconds = s.limit;
    const auto start = std::chrono::steady_clock::now();
    bool ok = false;
    try {
      ok = s.run(ctx, r);
    } catch (const std::exception& e) {
      r.summary = std::string("error: ") + e.what();
      ok = false;
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = r.seconds < r.limit_seconds;
    if (!in_time) r.summary += "; over the time limit";
    r.pass = ok && in_time;
    out << (r.pass ? "PASS" : "FAIL") << " criterion " << r.id << " " << r.name << ": "
        << r.summary << " [" << Fmt(r.seconds, 3) << " s / " << r.limit_seconds << " s]"
        << std::endl;
    results.push_back(std::move(r));
  }
  return results;
}

nlohmann::json AcceptanceToJson(const std::vector<CriterionResult>& results) {
  nlohmann::json rows = nlohmann::json::array();
  bool all = true;
  for (const auto& r : results) {
    all = all && r.pass;
    rows.push_back({{"id", r.id},
                    {"name", r.name},
                    {"pass", r.pass},
                    {"seconds", r.seconds},
                    {"limit_seconds", r.limit_seconds},
                    {"summary", r.summary},
                    {"details", r.details}});
  }
  return {{"pass", all}, {"criteria", std::move(rows)}};
}

}  // namespace ocrs
