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

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "ocrs/acceptance.h"
#include "ocrs/corpus.h"
#include "ocrs/errors.h"
#include "ocrs/exante.h"
#include "ocrs/harness.h"
#include "ocrs/instance.h"
#include "ocrs/lpcrs.h"
#include "ocrs/schemes.h"

namespace {

using namespace ocrs;

enum Exit {
  kOk = 0,
  kInternal = 1,
  kParse = 2,
  kInfeasible = 3,
  kMismatch = 4,
  kAcceptance = 5,
};

struct Config {
  std::uint64_t seed = 0;
  std::int64_t trials = 0;
  int workers = 0;
  std::string out;
  std::string format = "json";
  std::string dump_traces;
  std::string cache_dir;
  std::string instance;
  std::string scheme = "adversarial";
  std::string order;
  std::string mode = "fixed";
  double eps = 1e-6;
  double sigma = 3.0;
  bool estimate = false;
  bool worst_order = false;
  bool optimal = false;
  std::string filter;
  std::string corpus = "corpus";
  int max_hats = 7;
};

std::vector<Element> ParseOrder(const std::string& text, int n) {
  if (text.empty()) return {};
  std::vector<Element> order;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      order.push_back(std::stoi(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw InputError("bad element '" + item + "' in --order");
    }
  }
  if (!IsPermutation(order, n)) {
    throw InputError("--order must be a permutation of 0.." + std::to_string(n - 1));
  }
  return order;
}

ArrivalMode ParseMode(const std::string& mode) {
  if (mode == "fixed") return ArrivalMode::kFixed;
  if (mode == "random") return ArrivalMode::kRandom;
  throw InputError("--mode must be fixed or random");
}

void Emit(const Config& cfg, const std::string& text) {
  if (cfg.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(cfg.out);
  if (!f) throw InputError("cannot write '" + cfg.out + "'");
  f << text;
}

std::unique_ptr<std::ofstream> OpenTraces(const Config& cfg) {
  if (cfg.dump_traces.empty()) return nullptr;
  auto f = std::make_unique<std::ofstream>(cfg.dump_traces);
  if (!*f) throw InputError("cannot write '" + cfg.dump_traces + "'");
  return f;
}

struct Loaded {
  InstanceFile file;
  nlohmann::json raw;
  std::string hash;
};

Loaded Load(const Config& cfg) {
  if (cfg.instance.empty()) throw InputError("--instance is required");
  std::ifstream in(cfg.instance);
  if (!in) throw InputError("cannot open instance file '" + cfg.instance + "'");
  Loaded l;
  try {
    in >> l.raw;
  } catch (const nlohmann::json::exception& e) {
    throw InputError("cannot parse '" + cfg.instance + "': " + e.what());
  }
  l.file = InstanceFromJson(l.raw);
  l.hash = ContentHash(l.raw);
  return l;
}

// Bernoulli view of the instance: general instances are reduced through
// their ex-ante solution.
struct Prepared {
  BernoulliInstance bernoulli;
  ExAnteSolution solution;
  Decomposition dec;
};

Prepared Prepare(const Config& cfg, const Loaded& l) {
  Prepared p;
  const std::filesystem::path cache =
      cfg.cache_dir.empty() ? std::filesystem::path()
                            : std::filesystem::path(cfg.cache_dir) / (l.hash + ".json");
  if (l.file.general) {
    GeneralExAnte g = SolveExAnte(*l.file.general);
    p.bernoulli = g.reduced;
    p.solution = g.solution;
  } else {
    p.bernoulli = *l.file.bernoulli;
  }
  const int n = p.bernoulli.size();
  if (!cache.empty() && std::filesystem::exists(cache)) {
    std::ifstream in(cache);
    nlohmann::json j;
    in >> j;
    ExAnteFromJson(j, n, p.solution, p.dec);
    return p;
  }
  if (!l.file.general) p.solution = SolveExAnte(p.bernoulli);
  p.dec = Decompose(p.solution.x, *p.bernoulli.matroid);
  if (!cache.empty()) {
    std::filesystem::create_directories(cache.parent_path());
    std::ofstream(cache) << ExAnteToJson(p.solution, p.dec).dump() << "\n";
  }
  return p;
}

int CmdSolveExAnte(const Config& cfg) {
  const Loaded l = Load(cfg);
  if (l.file.x) {
    // A supplied fractional point must lie in the matroid polytope.
    Decompose(*l.file.x, *l.file.matroid());
  }
  const Prepared p = Prepare(cfg, l);
  nlohmann::json j = ExAnteToJson(p.solution, p.dec);
  j["instance_hash"] = l.hash;
  if (l.file.general) {
    const GeneralExAnte g = SolveExAnte(*l.file.general);
    nlohmann::json rules = nlohmann::json::array();
    for (const QuantileRule& r : g.rules) {
      rules.push_back({{"element", r.element},
                       {"mass", r.mass},
                       {"threshold", r.threshold},
                       {"boundary_probability", r.boundary_probability},
                       {"conditional_value", r.conditional_value}});
    }
    j["quantile_rules"] = std::move(rules);
  }
  if (!cfg.out.empty()) Emit(cfg, j.dump(2) + "\n");
  std::cout << "objective " << p.solution.objective << std::endl;
  return kOk;
}

std::vector<double> PointFor(const Loaded& l, const Config& cfg) {
  if (l.file.x) return *l.file.x;
  return Prepare(cfg, l).solution.x;
}

int CmdRun(const Config& cfg) {
  const Loaded l = Load(cfg);
  MatroidPtr m = l.file.matroid();
  const int n = m->size();
  auto traces = OpenTraces(cfg);
  MeasureOptions mo;
  mo.seed = cfg.seed;
  mo.workers = cfg.workers;
  mo.order = ParseOrder(cfg.order, n);
  mo.instance_hash = l.hash;
  mo.traces = traces.get();

  if (cfg.scheme == "adversarial" || cfg.scheme == "random-order") {
    const Prepared p = Prepare(cfg, l);
    const ArrivalMode mode =
        cfg.scheme == "adversarial" ? ArrivalMode::kFixed : ArrivalMode::kRandom;
    auto alg = std::make_shared<ProphetAlgorithm>(m, p.solution, p.dec);
    const SchemePtr scheme = MakeThresholdScheme(alg, mode);
    if (mode == ArrivalMode::kFixed && cfg.worst_order) {
      WorstOrderOptions wo;
      wo.seed = cfg.seed;
      wo.workers = cfg.workers;
      mo.order = WorstOrder(*scheme, p.bernoulli.p, p.bernoulli.y, wo).order;
    }
    mo.trials = cfg.trials > 0 ? cfg.trials : 100000;
    const RatioReport rep =
        MeasureRatio(*scheme, p.bernoulli.p, p.bernoulli.y, p.solution.objective, mo);
    Emit(cfg, cfg.format == "csv" ? rep.ToCsv() : rep.ToJson().dump(2) + "\n");
    if (!rep.ratio_defined) {
      std::cerr << "ratio undefined: ex-ante objective is 0" << std::endl;
      return kOk;
    }
    const double factor = TargetConstant(mode);
    const bool pass = rep.mean_alg + cfg.sigma * rep.se >= factor * rep.objective;
    std::cerr << "ratio " << rep.ratio << " (se " << rep.se / rep.objective << ", need "
              << factor << ")" << std::endl;
    return pass ? kOk : kAcceptance;
  }

  std::vector<double> x = PointFor(l, cfg);
  SchemePtr scheme;
  double target = 0.0;
  if (cfg.scheme == "rank1-ocrs") {
    scheme = MakeMagicianScheme(x);
    target = 0.5;
  } else if (cfg.scheme == "rank1-rcrs") {
    scheme = MakeExponentialRcrsScheme(x);
    target = TargetConstant(ArrivalMode::kRandom);
  } else if (cfg.scheme == "quarter") {
    scheme = MakeQuarterScheme(x);
    target = 0.25;
  } else if (cfg.scheme == "greedy") {
    scheme = MakeGreedyScheme(m);
  } else if (cfg.scheme == "lp-ocrs") {
    const ArrivalMode mode = ParseMode(cfg.mode);
    BuildOptions bo;
    bo.epsilon = cfg.eps;
    bo.separation.q.seed = cfg.seed;
    target = TargetConstant(mode) - cfg.eps;
    auto built = std::make_shared<RandomizedCrs>(
        BuildRandomizedCrs(m, x, mode, mo.order, TargetConstant(mode), bo));
    scheme = MakeRandomizedCrsScheme(built);
  } else {
    throw InputError("unknown scheme '" + cfg.scheme + "'");
  }
  if (scheme->size() != n) throw MismatchError("scheme and instance sizes differ");

  SelectabilityReport rep;
  bool exact = false;
  if (!cfg.estimate && traces == nullptr) {
    try {
      rep = ExactSelectability(*scheme, x, mo);
      exact = true;
    } catch (const CapExceededError&) {
    }
  }
  if (!exact) {
    mo.trials = cfg.trials > 0 ? cfg.trials : 1000000;
    rep = EstimateSelectability(*scheme, x, mo);
  }
  Emit(cfg, cfg.format == "csv" ? rep.ToCsv() : rep.ToJson().dump(2) + "\n");
  const double c = exact ? rep.c + 1e-9 : rep.LowerC(cfg.sigma);
  std::cerr << "c " << rep.c << (exact ? " (exact)" : " (estimate)") << std::endl;
  return c >= target ? kOk : kAcceptance;
}

int CmdBuild(const Config& cfg) {
  const Loaded l = Load(cfg);
  MatroidPtr m = l.file.matroid();
  const std::vector<double> x = PointFor(l, cfg);
  const ArrivalMode mode = ParseMode(cfg.mode);
  BuildOptions bo;
  bo.epsilon = cfg.eps;
  bo.separation.optimal = cfg.optimal;
  bo.to_optimality = cfg.optimal;
  bo.separation.q.seed = cfg.seed;
  bo.separation.q.workers = cfg.workers;
  const double target = TargetConstant(mode);
  if (cfg.worst_order) {
    if (mode != ArrivalMode::kFixed) throw MismatchError("--worst-order needs --mode fixed");
    const WorstOrderResult w = BuildWorstOrder(m, x, bo);
    Emit(cfg, nlohmann::json{{"worst_c", w.c}, {"order", w.order}, {"orders", w.orders}}
                  .dump(2) + "\n");
    std::cout << "worst c " << w.c << std::endl;
    return w.c >= target - cfg.eps ? kOk : kAcceptance;
  }
  const RandomizedCrs s =
      BuildRandomizedCrs(m, x, mode, ParseOrder(cfg.order, m->size()), target, bo);
  const MixtureCheck check = VerifyMixture(s);
  nlohmann::json j = s.ToJson();
  j["verified_min_ratio"] = check.min_ratio;
  j["instance_hash"] = l.hash;
  Emit(cfg, j.dump(2) + "\n");
  std::cout << "c " << s.c << " with " << s.policies.size() << " policies" << std::endl;
  return s.c >= target - cfg.eps && check.ok ? kOk : kAcceptance;
}

int CmdVerify(const Config& cfg) {
  AcceptanceOptions ao;
  ao.seed = cfg.seed;
  ao.workers = cfg.workers;
  ao.filter = cfg.filter;
  ao.trials = cfg.trials;
  ao.sigma = cfg.sigma;
  ao.corpus_dir = cfg.corpus;
  const auto results = RunAcceptance(ao, std::cerr);
  const nlohmann::json j = AcceptanceToJson(results);
  Emit(cfg, j.dump(2) + "\n");
  if (cfg.trials > 0 && cfg.trials < 10000) {
    std::cerr << "warning: " << cfg.trials
              << " trials is underpowered; Monte Carlo criteria may fail" << std::endl;
  }
  return j["pass"].get<bool>() ? kOk : kAcceptance;
}

int CmdOptimality(const Config& cfg) {
  ExperimentOptions eo;
  eo.seed = cfg.seed;
  eo.workers = cfg.workers;
  eo.sigma = cfg.sigma;
  if (cfg.trials > 0) eo.trials = cfg.trials;
  const nlohmann::json j = OptimalityExperiments(eo);
  Emit(cfg, j.dump(2) + "\n");
  return j["pass"].get<bool>() ? kOk : kAcceptance;
}

int CmdHat(const Config& cfg) {
  ExperimentOptions eo;
  eo.seed = cfg.seed;
  eo.workers = cfg.workers;
  eo.sigma = cfg.sigma;
  if (cfg.trials > 0) eo.trials = cfg.trials;
  const nlohmann::json j = HatRegression(eo, cfg.max_hats);
  Emit(cfg, j.dump(2) + "\n");
  return j["pass"].get<bool>() ? kOk : kAcceptance;
}

int CmdWriteCorpus(const Config& cfg) {
  const std::filesystem::path dir = cfg.out.empty() ? "corpus" : cfg.out;
  std::filesystem::create_directories(dir);
  for (const auto& [name, j] : CanonicalCorpus()) {
    std::ofstream(dir / (name + ".json")) << j.dump(2) << "\n";
  }
  std::cout << "wrote " << CanonicalCorpus().size() << " instances to " << dir.string()
            << std::endl;
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  Config cfg;
  CLI::App app{"Online contention resolution schemes and ex-ante prophet inequalities"};
  app.fallthrough();
  app.require_subcommand(1);
  app.add_option("--seed", cfg.seed, "Master random seed")->capture_default_str();
  app.add_option("--trials", cfg.trials, "Monte Carlo trials (0 = command default)");
  app.add_option("--workers", cfg.workers, "Worker threads (0 = all cores)");
  app.add_option("--out", cfg.out, "Output path (stdout when omitted)");
  app.add_option("--format", cfg.format, "Report format")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
  app.add_option("--dump-traces", cfg.dump_traces, "Write one JSON trace per line here");
  app.add_option("--cache-dir", cfg.cache_dir, "Cache ex-ante solutions by instance hash");
  app.add_option("--sigma", cfg.sigma, "Standard errors of slack in Monte Carlo checks")
      ->capture_default_str();

  auto* solve = app.add_subcommand("solve-exante", "Solve and decompose the ex-ante relaxation");
  solve->add_option("--instance", cfg.instance, "Instance file")->required();

  auto* run = app.add_subcommand("run", "Measure a scheme on an instance");
  run->add_option("--instance", cfg.instance, "Instance file")->required();
  run->add_option("--scheme", cfg.scheme, "Scheme")
      ->check(CLI::IsMember({"adversarial", "random-order", "rank1-ocrs", "rank1-rcrs",
                             "quarter", "lp-ocrs", "greedy"}))
      ->capture_default_str();
  run->add_option("--order", cfg.order, "Fixed arrival order, e.g. 2,0,1");
  run->add_option("--mode", cfg.mode, "Arrival model for lp-ocrs")
      ->check(CLI::IsMember({"fixed", "random"}));
  run->add_option("--eps", cfg.eps, "Target slack for lp-ocrs");
  run->add_flag("--estimate", cfg.estimate, "Use Monte Carlo even when exact is possible");
  run->add_flag("--worst-order", cfg.worst_order, "Measure under the worst fixed order");

  auto* build = app.add_subcommand("build-lp-ocrs", "Build a randomized scheme by column generation");
  build->add_option("--instance", cfg.instance, "Instance file")->required();
  build->add_option("--order", cfg.order, "Fixed arrival order");
  build->add_option("--mode", cfg.mode, "Arrival model")
      ->check(CLI::IsMember({"fixed", "random"}))
      ->capture_default_str();
  build->add_option("--eps", cfg.eps, "Target slack")->capture_default_str();
  build->add_flag("--optimal", cfg.optimal, "Use the exact oracle and solve to optimality");
  build->add_flag("--worst-order", cfg.worst_order, "Minimum c over all arrival orders");

  auto* verify = app.add_subcommand("verify", "Run the acceptance suite");
  verify->add_option("--filter", cfg.filter, "Only criteria matching this tag");
  verify->add_option("--corpus", cfg.corpus, "Instance corpus directory")->capture_default_str();

  app.add_subcommand("optimality", "Optimality-ceiling experiments");
  auto* hat = app.add_subcommand("hat", "Hat-graph regression");
  hat->add_option("--max-hats", cfg.max_hats, "Largest hat count")->capture_default_str();

  app.add_subcommand("write-corpus", "Write the canonical instance corpus to --out");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kParse;
  }

  try {
    if (*solve) return CmdSolveExAnte(cfg);
    if (*run) return CmdRun(cfg);
    if (*build) return CmdBuild(cfg);
    if (*verify) return CmdVerify(cfg);
    if (app.got_subcommand("optimality")) return CmdOptimality(cfg);
    if (*hat) return CmdHat(cfg);
    if (app.got_subcommand("write-corpus")) return CmdWriteCorpus(cfg);
  } catch (const MismatchError& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return kMismatch;
  } catch (const CapExceededError& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return kMismatch;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return kParse;
  } catch (const InfeasibleError& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return kInfeasible;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << std::endl;
    return kInternal;
  }
  return kInternal;
}
