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
#include <memory>
#include <sstream>
#include <vector>

#include "doctest.h"
#include "ocrs/corpus.h"
#include "ocrs/errors.h"
#include "ocrs/exante.h"
#include "ocrs/harness.h"
#include "ocrs/schemes.h"
#include "oracles.h"

using namespace ocrs;
using ocrs::testing::BruteContractedMax;
using ocrs::testing::PatternProbability;

namespace {

MatroidPtr Rank1(int n) { return std::make_shared<UniformMatroid>(n, 1); }

double BruteOffline(const BernoulliInstance& inst) {
  const int n = inst.size();
  double total = 0.0;
  for (std::uint64_t s = 0; s < (1ull << n); ++s) {
    std::vector<double> v(n, 0.0);
    for (int i = 0; i < n; ++i) {
      if ((s >> i) & 1) v[i] = inst.y[i];
    }
    total += PatternProbability(inst.p, s) * BruteContractedMax(*inst.matroid, 0, v);
  }
  return total;
}

}  // namespace

TEST_SUITE("harness") {
  TEST_CASE("magician selectability is exactly one half") {
    const std::vector<double> x{0.5, 0.5};
    const SchemePtr s = MakeMagicianScheme(x);
    const SelectabilityReport exact = ExactSelectability(*s, x);
    CHECK(exact.exact());
    CHECK(exact.elements[0].p_select == doctest::Approx(0.25));
    CHECK(exact.elements[1].p_select == doctest::Approx(0.25));
    CHECK(exact.c == doctest::Approx(0.5));

    MeasureOptions mo;
    mo.trials = 1000000;
    const SelectabilityReport est = EstimateSelectability(*s, x, mo);
    for (const ElementSelectability& e : est.elements) {
      CHECK(std::abs(e.p_select - 0.25) <= 3 * e.se);
    }
  }

  TEST_CASE("never-accept scheme") {
    const std::vector<double> x{0.5, 0.3, 0.2};
    const SchemePtr s = MakeNeverScheme(3);
    CHECK(ExactSelectability(*s, x).c == 0.0);
    MeasureOptions mo;
    mo.trials = 1000;
    for (const ElementSelectability& e : EstimateSelectability(*s, x, mo).elements) {
      CHECK(e.p_select == 0.0);
      CHECK(e.se == 0.0);
    }
  }

  TEST_CASE("rcrs selectability estimate") {
    const std::vector<double> x(5, 0.2);
    MeasureOptions mo;
    mo.trials = 1000000;
    const SelectabilityReport r = EstimateSelectability(*MakeExponentialRcrsScheme(x), x, mo);
    CHECK(r.LowerC(3.0) <= 1 - std::exp(-1.0));
    for (const ElementSelectability& e : r.elements) {
      CHECK(e.p_select / e.x >= 1 - std::exp(-1.0) - 3 * e.se / e.x);
    }
  }

  TEST_CASE("exact and monte carlo selectability agree") {
    Rng gen(51);
    for (int trial = 0; trial < 6; ++trial) {
      const int n = 3 + static_cast<int>(gen.below(4));
      const std::vector<double> x = RandomRank1Point(n, gen);
      MeasureOptions mo;
      mo.trials = 200000;
      mo.seed = trial;
      for (const SchemePtr& s : {MakeMagicianScheme(x), MakeQuarterScheme(x)}) {
        const SelectabilityReport ex = ExactSelectability(*s, x, mo);
        const SelectabilityReport mc = EstimateSelectability(*s, x, mo);
        for (int i = 0; i < n; ++i) {
          // Binomial SE at the exact value; the sample SE understates it
          // when only a few dozen hits are expected.
          const double p = ex.elements[i].p_select;
          const double se = std::sqrt(p * (1 - p) / mo.trials);
          CHECK(std::abs(p - mc.elements[i].p_select) <= 4 * se + 1e-12);
        }
      }
    }
  }

  TEST_CASE("offline optimum and ratio on the pair") {
    const BernoulliInstance inst{Rank1(2), {0.5, 0.5}, {1, 1}};
    CHECK(BruteForceOffline(inst) == doctest::Approx(0.75));
    auto alg = std::make_shared<ProphetAlgorithm>(MakeProphetAlgorithm(inst));
    const SchemePtr s = MakeThresholdScheme(alg, ArrivalMode::kFixed);
    CHECK(ExactExpectedValue(*s, inst.p, inst.y, std::vector<Element>{0, 1}) ==
          doctest::Approx(0.75));
    MeasureOptions mo;
    mo.trials = 100000;
    const RatioReport r = MeasureRatio(*s, inst.p, inst.y, 1.0, mo);
    CHECK(r.ratio_defined);
    CHECK(std::abs(r.mean_alg - 0.75) <= 3 * r.se);
    CHECK(r.mean_alg == doctest::Approx(r.mean_revenue + r.mean_utility));

    const RatioReport zero = MeasureRatio(*s, inst.p, std::vector<double>{0, 0}, 0.0, mo);
    CHECK_FALSE(zero.ratio_defined);
  }

  TEST_CASE("offline optimum matches enumeration") {
    Rng gen(52);
    for (int trial = 0; trial < 10; ++trial) {
      const int n = 3 + static_cast<int>(gen.below(5));
      MatroidPtr m = RandomGraphicMatroid(n, gen);
      const BernoulliInstance inst = RandomBernoulliInstance(m, gen);
      CHECK(BruteForceOffline(inst) == doctest::Approx(BruteOffline(inst)));
    }
    const BernoulliInstance det{Rank1(3), {1, 1, 1}, {1, 4, 2}};
    CHECK(BruteForceOffline(det) == doctest::Approx(4));
  }

  TEST_CASE("ex-ante dominance and the correlation gap") {
    Rng gen(53);
    for (int trial = 0; trial < 20; ++trial) {
      const int n = 3 + static_cast<int>(gen.below(6));
      MatroidPtr m = trial % 2 ? RandomGraphicMatroid(n, gen) : RandomPartitionMatroid(n, gen);
      const BernoulliInstance inst = RandomBernoulliInstance(m, gen);
      const double relax = SolveExAnte(inst).objective;
      const double offline = BruteForceOffline(inst);
      CHECK(relax >= offline - 1e-9);
      if (offline > 0) CHECK(relax / offline <= std::exp(1.0) / (std::exp(1.0) - 1) + 1e-6);
    }
    const int n = 8;
    const BernoulliInstance spread{Rank1(n), std::vector<double>(n, 1.0 / n), std::vector<double>(n, 1.0)};
    const double gap = SolveExAnte(spread).objective / BruteForceOffline(spread);
    CHECK(gap > 1.0);
    CHECK(gap == doctest::Approx(1.0 / (1 - std::pow(1 - 1.0 / n, n))));
  }

  TEST_CASE("reports are reproducible") {
    const HatExample hat = MakeHat(2);
    const BernoulliInstance inst{hat.matroid, hat.x, std::vector<double>(5, 1.0)};
    auto alg = std::make_shared<ProphetAlgorithm>(MakeProphetAlgorithm(inst));
    MeasureOptions mo;
    mo.trials = 20000;
    mo.seed = 9;
    for (ArrivalMode mode : {ArrivalMode::kFixed, ArrivalMode::kRandom}) {
      const SchemePtr s = MakeThresholdScheme(alg, mode);
      MeasureOptions one = mo;
      one.workers = 1;
      const std::string a = MeasureRatio(*s, inst.p, inst.y, 3.0, mo).ToJson().dump();
      const std::string b = MeasureRatio(*s, inst.p, inst.y, 3.0, one).ToJson().dump();
      CHECK(a == b);
      CHECK(EstimateSelectability(*s, hat.x, mo).ToCsv() ==
            EstimateSelectability(*s, hat.x, one).ToCsv());
    }
  }

  TEST_CASE("csv layout") {
    const std::vector<double> x{0.5, 0.5};
    const std::string csv = ExactSelectability(*MakeMagicianScheme(x), x).ToCsv();
    std::istringstream in(csv);
    std::string header;
    std::getline(in, header);
    CHECK(header == "element,x_i,p_select,mode,se,trials");
  }

  TEST_CASE("hat worst order keeps one half") {
    const HatExample hat = MakeHat(2);
    const BernoulliInstance inst{hat.matroid, hat.x, std::vector<double>(5, 1.0)};
    auto alg = std::make_shared<ProphetAlgorithm>(MakeProphetAlgorithm(inst));
    const SchemePtr s = MakeThresholdScheme(alg, ArrivalMode::kFixed);
    const OrderValue w = WorstOrder(*s, inst.p, inst.y);
    CHECK(w.orders_checked == 120);
    MeasureOptions mo;
    mo.order = w.order;
    mo.trials = 100000;
    const RatioReport r = MeasureRatio(*s, inst.p, inst.y, alg->solution().objective, mo);
    CHECK(r.ratio >= 0.5 - 3 * r.se / r.objective);
    // No active edges: nothing happens.
    const SelectionTrace t = alg->RunAdversarial(IdentityArrival(5), ElementSet(5));
    CHECK(t.accepted.empty());
  }

  TEST_CASE("ceiling arithmetic") {
    CHECK(1 - std::pow(0.8, 5) == doctest::Approx(0.67232));
    double prev = 1.0;
    for (int n = 2; n <= 50; ++n) {
      const double c = 1 - std::pow(1 - 1.0 / n, n);
      CHECK(c < prev);
      CHECK(c > 1 - std::exp(-1.0));
      prev = c;
    }
    CHECK(prev == doctest::Approx(0.6358).epsilon(1e-3));
  }
}
