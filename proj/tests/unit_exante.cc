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
#include <vector>

#include "doctest.h"
#include "ocrs/corpus.h"
#include "ocrs/errors.h"
#include "ocrs/exante.h"
#include "ocrs/harness.h"
#include "ocrs/instance.h"
#include "ocrs/lp.h"
#include "ocrs/matroid.h"
#include "oracles.h"

using namespace ocrs;
using ocrs::testing::BruteContractedMax;
using ocrs::testing::BruteRank;

namespace {

MatroidPtr Rank1(int n) { return std::make_shared<UniformMatroid>(n, 1); }

DiscreteDistribution TwoAtoms() { return DiscreteDistribution({{10, 0.3}, {5, 0.7}}); }

// Ex-ante LP over (element, atom) variables with every rank constraint.
double AtomLp(const GeneralInstance& inst) {
  const int n = inst.size();
  std::vector<std::pair<int, Atom>> vars;
  for (int i = 0; i < n; ++i) {
    for (const Atom& a : inst.dists[i].atoms()) vars.push_back({i, a});
  }
  lp::Problem p;
  for (const auto& v : vars) p.objective.push_back(v.second.value);
  for (std::size_t k = 0; k < vars.size(); ++k) {
    lp::Constraint c;
    c.coefficients.assign(vars.size(), 0.0);
    c.coefficients[k] = 1.0;
    c.rhs = vars[k].second.probability;
    p.constraints.push_back(c);
  }
  for (std::uint64_t s = 1; s < (1ull << n); ++s) {
    lp::Constraint c;
    for (const auto& v : vars) c.coefficients.push_back(((s >> v.first) & 1) ? 1.0 : 0.0);
    c.rhs = BruteRank(*inst.matroid, s);
    p.constraints.push_back(c);
  }
  const lp::Solution sol = lp::Maximize(p);
  REQUIRE(sol.status == lp::Status::kOptimal);
  return sol.objective;
}

void CheckDecomposition(const Decomposition& dec, const Matroid& m,
                        const std::vector<double>& x) {
  double total = 0.0;
  for (std::size_t j = 0; j < dec.sets.size(); ++j) {
    CHECK(dec.weights[j] >= 0.0);
    CHECK(m.IsIndependent(dec.sets[j]));
    total += dec.weights[j];
  }
  CHECK(total == doctest::Approx(1.0).epsilon(1e-9));
  const std::vector<double> marg = dec.Marginals(m.size());
  for (int i = 0; i < m.size(); ++i) CHECK(std::abs(marg[i] - x[i]) <= 1e-8);
}

}  // namespace

TEST_SUITE("instance") {
  TEST_CASE("quantile rule on the top atom") {
    const QuantileRule r = BuildQuantileRule(TwoAtoms(), 0.3);
    CHECK(r.ActivationProbability(TwoAtoms()) == doctest::Approx(0.3));
    CHECK(r.conditional_value == doctest::Approx(10));
    CHECK(r.threshold == doctest::Approx(5));
    CHECK(r.boundary_probability == doctest::Approx(0));
  }

  TEST_CASE("quantile rule splits the boundary atom") {
    const QuantileRule r = BuildQuantileRule(TwoAtoms(), 0.65);
    CHECK(r.threshold == doctest::Approx(5));
    CHECK(r.boundary_probability == doctest::Approx(0.5));
    // (0.3 * 10 + 0.35 * 5) / 0.65
    CHECK(r.conditional_value == doctest::Approx(95.0 / 13.0));
    Rng rng(1);
    const int draws = 100000;
    int active = 0;
    double value = 0.0;
    for (int k = 0; k < draws; ++k) {
      const double v = TwoAtoms().Sample(rng);
      if (Activate(r, v, rng)) {
        ++active;
        value += v;
      }
    }
    const double se = std::sqrt(0.65 * 0.35 / draws);
    CHECK(std::abs(active / double(draws) - 0.65) <= 3 * se);
    CHECK(value / active == doctest::Approx(95.0 / 13.0).epsilon(0.01));
  }

  TEST_CASE("quantile rule with zero mass") {
    const QuantileRule r = BuildQuantileRule(TwoAtoms(), 0.0);
    CHECK(r.conditional_value == 0.0);
    Rng rng(2);
    for (int k = 0; k < 100; ++k) CHECK_FALSE(Activate(r, TwoAtoms().Sample(rng), rng));
  }

  TEST_CASE("activation against the threshold") {
    const QuantileRule r = BuildQuantileRule(TwoAtoms(), 0.65);
    Rng rng(3);
    CHECK(Activate(r, 10, rng));
    CHECK_FALSE(Activate(r, 4, rng));
  }

  TEST_CASE("malformed distributions") {
    CHECK_THROWS_AS(DiscreteDistribution({{1, 0.5}, {2, 0.4}}), InputError);
    CHECK_THROWS_AS(DiscreteDistribution({{-1, 1.0}}), InputError);
    CHECK_THROWS_AS(DiscreteDistribution({{1, 0.5}, {1, 0.5}}), InputError);
  }

  TEST_CASE("active set sampling") {
    Rng rng(4);
    const std::vector<double> det{1, 1, 0};
    for (int k = 0; k < 50; ++k) CHECK(SampleActiveSet(det, rng) == ElementSet(3, {0, 1}));
    const std::vector<double> half{0.5, 0.5};
    int c0 = 0, c1 = 0;
    const int draws = 100000;
    for (int k = 0; k < draws; ++k) {
      const ElementSet s = SampleActiveSet(half, rng);
      c0 += s.contains(0);
      c1 += s.contains(1);
    }
    const double se = std::sqrt(0.25 / draws);
    CHECK(std::abs(c0 / double(draws) - 0.5) <= 3 * se);
    CHECK(std::abs(c1 / double(draws) - 0.5) <= 3 * se);
    CHECK_THROWS_AS(SampleActiveSet(std::vector<double>{1.5}, rng), InputError);
  }

  TEST_CASE("arrival orders") {
    CHECK(FixedArrival({2, 0, 1}).sequence == std::vector<Element>{2, 0, 1});
    CHECK_THROWS_AS(FixedArrival({0, 0, 1}), InputError);
    const ArrivalOrder t = TimedArrival({0.9, 0.1, 0.1});
    CHECK(t.sequence == std::vector<Element>{1, 2, 0});
    CHECK(t.TimeAt(2) == doctest::Approx(0.9));
    Rng rng(5);
    const ArrivalOrder u = SampleUniformArrival(6, rng);
    CHECK(IsPermutation(u.sequence, 6));
  }

  TEST_CASE("instance file round trip and validation") {
    BernoulliInstance inst{Rank1(2), {0.5, 0.5}, {1, 1}};
    const InstanceFile f = InstanceFromJson(InstanceToJson(inst));
    REQUIRE(f.bernoulli);
    CHECK(f.bernoulli->p == inst.p);
    nlohmann::json bad = InstanceToJson(inst);
    bad["p"] = {0.5};
    CHECK_THROWS_AS(InstanceFromJson(bad), InputError);
    bad = InstanceToJson(inst);
    bad["y"] = {1, -1};
    CHECK_THROWS_AS(InstanceFromJson(bad), InputError);
  }
}

TEST_SUITE("exante") {
  TEST_CASE("rank-1 examples") {
    ExAnteSolution s = SolveExAnte(BernoulliInstance{Rank1(2), {0.5, 0.5}, {1, 1}});
    CHECK(s.x[0] == doctest::Approx(0.5));
    CHECK(s.x[1] == doctest::Approx(0.5));
    CHECK(s.objective == doctest::Approx(1.0));
    CHECK(ExAnteLpOptimum(BernoulliInstance{Rank1(2), {0.5, 0.5}, {1, 1}}) ==
          doctest::Approx(1.0));

    s = SolveExAnte(BernoulliInstance{Rank1(2), {1, 1}, {2, 1}});
    CHECK(s.x == std::vector<double>{1, 0});
    CHECK(s.objective == doctest::Approx(2));
  }

  TEST_CASE("hat instance") {
    const HatExample hat = MakeHat(2);
    const BernoulliInstance inst{hat.matroid, hat.x, std::vector<double>(5, 1.0)};
    const ExAnteSolution s = SolveExAnte(inst);
    CHECK(s.objective >= 3.0 - 1e-9);
    CHECK(MatroidPolytopeViolation(*hat.matroid, s.x) <= 1e-9);
  }

  TEST_CASE("greedy matches the rank-constrained LP") {
    Rng rng(21);
    for (int trial = 0; trial < 40; ++trial) {
      const int n = 3 + static_cast<int>(rng.below(5));
      MatroidPtr m;
      switch (trial % 3) {
        case 0: m = RandomPartitionMatroid(n, rng); break;
        case 1: m = RandomGraphicMatroid(n, rng); break;
        default: m = RandomBinaryMatroid(n, 3, rng); break;
      }
      const BernoulliInstance inst = RandomBernoulliInstance(m, rng);
      const ExAnteSolution s = SolveExAnte(inst);
      CHECK(s.objective == doctest::Approx(ExAnteLpOptimum(inst)).epsilon(1e-9));
      CHECK(MatroidPolytopeViolation(*m, s.x) <= 1e-9);
      for (int i = 0; i < n; ++i) {
        CHECK(s.x[i] <= inst.p[i] + 1e-12);
        CHECK(s.x[i] >= 0.0);
      }
      // The relaxation upper-bounds the offline optimum.
      CHECK(s.objective >= BruteForceOffline(inst) - 1e-9);
    }
  }

  TEST_CASE("general instances match the atom LP") {
    Rng rng(22);
    for (int trial = 0; trial < 20; ++trial) {
      const int n = 2 + static_cast<int>(rng.below(3));
      MatroidPtr m = trial % 2 ? RandomGraphicMatroid(n, rng) : RandomPartitionMatroid(n, rng);
      const GeneralInstance inst = RandomGeneralInstance(m, rng);
      const GeneralExAnte g = SolveExAnte(inst);
      CHECK(g.solution.objective == doctest::Approx(AtomLp(inst)).epsilon(1e-9));
      double reduced = 0.0;
      for (int i = 0; i < n; ++i) {
        CHECK(g.rules[i].ActivationProbability(inst.dists[i]) ==
              doctest::Approx(g.solution.x[i]).epsilon(1e-12));
        CHECK(g.reduced.p[i] == doctest::Approx(g.solution.x[i]));
        reduced += g.reduced.p[i] * g.reduced.y[i];
      }
      CHECK(reduced == doctest::Approx(g.solution.objective));
      CHECK(g.solution.objective >= BruteForceOffline(inst) - 1e-9);
    }
  }

  TEST_CASE("decomposition examples") {
    UniformMatroid r1(2, 1);
    Decomposition d = Decompose(std::vector<double>{0.5, 0.5}, r1);
    CheckDecomposition(d, r1, {0.5, 0.5});
    for (std::size_t j = 0; j < d.sets.size(); ++j) {
      if (d.weights[j] > 1e-12) {
        CHECK(d.sets[j].size() == 1);
        CHECK(d.weights[j] == doctest::Approx(0.5));
      }
    }
    UniformMatroid u(3, 2);
    CheckDecomposition(Decompose(std::vector<double>{1, 0.5, 0.5}, u), u, {1, 0.5, 0.5});
    d = Decompose(std::vector<double>{0, 0, 0}, u);
    CheckDecomposition(d, u, {0, 0, 0});
    CHECK(d.sets.size() == 1);
    CHECK(d.sets[0].empty());
  }

  TEST_CASE("decomposition of random polytope points") {
    Rng rng(23);
    for (int trial = 0; trial < 30; ++trial) {
      const int n = 3 + static_cast<int>(rng.below(8));
      MatroidPtr m = trial % 2 ? RandomGraphicMatroid(n, rng) : RandomPartitionMatroid(n, rng);
      const std::vector<double> x = RandomPolytopePoint(*m, rng);
      CheckDecomposition(Decompose(x, *m), *m, x);
    }
  }

  TEST_CASE("points outside the polytope are rejected") {
    UniformMatroid r1(2, 1);
    CHECK_THROWS_AS(Decompose(std::vector<double>{0.7, 0.7}, r1), InfeasibleError);
  }

  TEST_CASE("correlated values have mean x y") {
    UniformMatroid r1(2, 1);
    const Decomposition d = Decompose(std::vector<double>{0.5, 0.5}, r1);
    const std::vector<double> y{3, 1};
    Rng rng(24);
    const int draws = 100000;
    double sum = 0.0, sq = 0.0;
    for (int k = 0; k < draws; ++k) {
      const double v = SampleCorrelated(d, y, rng)[0];
      sum += v;
      sq += v * v;
    }
    const double mean = sum / draws;
    const double se = std::sqrt((sq / draws - mean * mean) / draws);
    CHECK(std::abs(mean - 1.5) <= 3 * se);

    const Decomposition one{{ElementSet(2, {1})}, {1.0}};
    CHECK(SampleCorrelated(one, y, rng) == std::vector<double>{0, 1});
    const Decomposition none{{ElementSet(2)}, {1.0}};
    CHECK(SampleCorrelated(none, y, rng) == std::vector<double>{0, 0});
  }

  TEST_CASE("remaining value") {
    UniformMatroid r1(2, 1);
    CHECK(RemainingValue(r1, ElementSet(2), std::vector<double>{1, 0}) == 1.0);
    CHECK(RemainingValue(r1, ElementSet(2, {0}), std::vector<double>{1, 0}) == 0.0);
    const HatExample hat = MakeHat(2);
    CHECK(RemainingValue(*hat.matroid, ElementSet(5), std::vector<double>(5, 1.0)) == 3.0);
    CHECK(RemainingValue(*hat.matroid, ElementSet(5, {0}), std::vector<double>(5, 0.0)) == 0.0);
  }

  TEST_CASE("remaining value is monotone and matches enumeration") {
    Rng rng(25);
    for (int trial = 0; trial < 20; ++trial) {
      const int n = 3 + static_cast<int>(rng.below(5));
      MatroidPtr m = RandomGraphicMatroid(n, rng);
      std::vector<double> v(n);
      for (double& e : v) e = rng.uniform();
      for (std::uint64_t a = 0; a < (1ull << n); ++a) {
        const ElementSet set = ElementSet::FromMask(n, a);
        const double r = RemainingValue(*m, set, v);
        CHECK(r == doctest::Approx(BruteContractedMax(*m, a, v)));
        for (int i = 0; i < n; ++i) CHECK(RemainingValue(*m, set.with(i), v) <= r + 1e-12);
      }
    }
  }

  TEST_CASE("base prices") {
    auto r1 = Rank1(2);
    const Decomposition d{{ElementSet(2, {0}), ElementSet(2, {1})}, {0.5, 0.5}};
    BasePriceOracle oracle(r1, d, {1, 1});
    CHECK(oracle.Price(ElementSet(2), 0) == doctest::Approx(1));
    CHECK(oracle.Price(ElementSet(2), 1) == doctest::Approx(1));
    CHECK(oracle.Price(ElementSet(2, {0}), 1) == doctest::Approx(0));
    BasePriceOracle zero(r1, d, {0, 0});
    CHECK(zero.Prices(ElementSet(2)) == std::vector<double>{0, 0});
  }

  TEST_CASE("base prices match enumeration and the monte carlo estimate") {
    Rng rng(26);
    for (int trial = 0; trial < 10; ++trial) {
      const int n = 3 + static_cast<int>(rng.below(4));
      MatroidPtr m = RandomGraphicMatroid(n, rng);
      const BernoulliInstance inst = RandomBernoulliInstance(m, rng);
      const ExAnteSolution s = SolveExAnte(inst);
      const Decomposition d = Decompose(s.x, *m);
      BasePriceOracle oracle(m, d, s.y);
      const std::uint64_t a = m->Basis(ElementSet::FromMask(n, rng.below(1ull << n))).mask();
      const ElementSet aset = ElementSet::FromMask(n, a);
      const std::vector<double>& b = oracle.Prices(aset);
      for (int i = 0; i < n; ++i) {
        if ((a >> i) & 1) continue;
        double expect = 0.0;
        for (std::size_t j = 0; j < d.sets.size(); ++j) {
          const std::vector<double> v = CorrelatedValues(d.sets[j], s.y);
          expect += d.weights[j] * (BruteContractedMax(*m, a, v) -
                                    BruteContractedMax(*m, a | (1ull << i), v));
        }
        CHECK(b[i] == doctest::Approx(expect).epsilon(1e-9));
      }
      Rng mc(27);
      const EstimatedPrices est = EstimateBasePrices(*m, aset, d, s.y, 20000, mc);
      for (int i = 0; i < n; ++i) {
        CHECK(std::abs(est.mean[i] - b[i]) <= 4 * est.standard_error[i] + 1e-12);
      }
    }
  }

  TEST_CASE("solution json round trip and hashing") {
    UniformMatroid u(3, 2);
    const ExAnteSolution s{{1, 0.5, 0.5}, {1, 2, 3}, 3.5};
    const Decomposition d = Decompose(s.x, u);
    const nlohmann::json j = ExAnteToJson(s, d);
    ExAnteSolution s2;
    Decomposition d2;
    ExAnteFromJson(j, 3, s2, d2);
    CHECK(s2.x == s.x);
    CHECK(s2.objective == s.objective);
    CHECK(d2.weights == d.weights);
    CHECK(ContentHash(j) == ContentHash(ExAnteToJson(s2, d2)));
    CHECK(ContentHash(j).size() == 16);
  }
}
