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

#include <algorithm>
#include <cmath>
#include <memory>
#include <vector>

#include "doctest.h"
#include "ocrs/corpus.h"
#include "ocrs/errors.h"
#include "ocrs/exante.h"
#include "ocrs/lpcrs.h"
#include "ocrs/schemes.h"
#include "oracles.h"

using namespace ocrs;
using ocrs::testing::PatternProbability;

namespace {

MatroidPtr Rank1(int n) { return std::make_shared<UniformMatroid>(n, 1); }

PolicyPtr PairThresholdPolicy() {
  auto m = Rank1(2);
  const std::vector<double> x{0.5, 0.5};
  const ExAnteSolution sol{x, {1, 1}, 1.0};
  auto prices = std::make_shared<BasePriceOracle>(m, Decompose(x, *m), sol.y);
  return std::make_shared<ThresholdPolicy>(prices, sol, std::vector<double>{0.5});
}

// q by enumerating activity patterns and calling Decide directly.
std::vector<double> BruteQ(const Policy& policy, const Matroid& m,
                           const std::vector<double>& x, const std::vector<Element>& order) {
  const int n = m.size();
  std::vector<double> q(n, 0.0);
  for (std::uint64_t s = 0; s < (1ull << n); ++s) {
    ElementSet arrived(n), accepted(n);
    for (Element e : order) {
      if (((s >> e) & 1) && policy.Decide(arrived, accepted, e) &&
          m.IsIndependent(accepted.with(e))) {
        accepted.insert(e);
        q[e] += PatternProbability(x, s);
      }
      arrived.insert(e);
    }
  }
  return q;
}

}  // namespace

TEST_SUITE("lpcrs") {
  TEST_CASE("exact q of simple policies") {
    auto m = Rank1(2);
    const std::vector<double> x{0.5, 0.5};
    const std::vector<Element> order{0, 1};
    const PolicyPtr p = PairThresholdPolicy();
    const QResult r = ExactQ(*p, *m, x, ArrivalMode::kFixed, order);
    CHECK(r.exact);
    CHECK(r.q[0] == doctest::Approx(0.5));
    CHECK(r.q[1] == doctest::Approx(0.25));

    TablePolicy never(m, "never");
    const QResult z = ExactQ(never, *m, x, ArrivalMode::kFixed, order);
    CHECK(z.q == std::vector<double>{0, 0});
    CHECK(never.entries() == 0);
  }

  TEST_CASE("exact q matches enumeration and sampling") {
    Rng gen(41);
    for (int trial = 0; trial < 8; ++trial) {
      const int n = 4 + static_cast<int>(gen.below(3));
      MatroidPtr m = RandomGraphicMatroid(n, gen);
      const std::vector<double> x = RandomPolytopePoint(*m, gen);
      std::vector<double> y(n);
      for (double& v : y) v = gen.uniform();
      std::vector<Element> order(n);
      for (int i = 0; i < n; ++i) order[i] = i;
      const PolicyPtr opt = OptimalPolicy(m, x, y, ArrivalMode::kFixed, order);
      const QResult exact = ExactQ(*opt, *m, x, ArrivalMode::kFixed, order);
      const std::vector<double> brute = BruteQ(*opt, *m, x, order);
      for (int i = 0; i < n; ++i) CHECK(exact.q[i] == doctest::Approx(brute[i]).epsilon(1e-12));

      // Random mode: average of the fixed-order q over every permutation.
      const PolicyPtr ropt = OptimalPolicy(m, x, y, ArrivalMode::kRandom, {});
      const QResult rq = ExactQ(*ropt, *m, x, ArrivalMode::kRandom, {});
      std::vector<double> avg(n, 0.0);
      std::vector<Element> perm = order;
      int count = 0;
      do {
        const std::vector<double> q = BruteQ(*ropt, *m, x, perm);
        for (int i = 0; i < n; ++i) avg[i] += q[i];
        ++count;
      } while (std::next_permutation(perm.begin(), perm.end()));
      for (int i = 0; i < n; ++i) CHECK(rq.q[i] == doctest::Approx(avg[i] / count).epsilon(1e-12));

      ExactQOptions sampled;
      sampled.random_cap = 2;
      sampled.sampled_orders = 20000;
      sampled.seed = 5;
      const QResult est = ExactQ(*ropt, *m, x, ArrivalMode::kRandom, {}, sampled);
      CHECK_FALSE(est.exact);
      for (int i = 0; i < n; ++i) {
        CHECK(std::abs(est.q[i] - rq.q[i]) <= 4 * est.standard_error[i] + 1e-12);
      }
    }
  }

  TEST_CASE("exact q refuses large ground sets") {
    auto m = Rank1(9);
    const std::vector<double> x(9, 0.1);
    TablePolicy never(m, "never");
    CHECK_THROWS_AS(ExactQ(never, *m, x, ArrivalMode::kRandom, {}), CapExceededError);
  }

  TEST_CASE("separation oracle values") {
    auto m = Rank1(2);
    const std::vector<double> x{0.5, 0.5};
    const std::vector<Element> order{0, 1};
    const SeparationResult r =
        SeparationOracle(std::vector<double>{1, 1}, m, x, ArrivalMode::kFixed, order);
    CHECK(r.value == doctest::Approx(0.75));
    CHECK_FALSE(r.used_fallback);
    SeparationOptions opt;
    opt.optimal = true;
    const SeparationResult best =
        SeparationOracle(std::vector<double>{1, 1}, m, x, ArrivalMode::kFixed, order, opt);
    CHECK(best.value == doctest::Approx(0.75));
  }

  TEST_CASE("separation meets the guarantee on random duals") {
    Rng gen(42);
    for (int trial = 0; trial < 10; ++trial) {
      const int n = 3 + static_cast<int>(gen.below(3));
      MatroidPtr m = trial % 2 ? RandomGraphicMatroid(n, gen) : RandomPartitionMatroid(n, gen);
      const std::vector<double> x = RandomPolytopePoint(*m, gen);
      std::vector<double> y(n);
      double s = 0.0;
      for (int i = 0; i < n; ++i) {
        y[i] = gen.uniform();
        s += x[i] * y[i];
      }
      if (s <= 0.0) continue;
      for (double& v : y) v /= s;
      std::vector<Element> order(n);
      for (int i = 0; i < n; ++i) order[i] = n - 1 - i;
      for (ArrivalMode mode : {ArrivalMode::kFixed, ArrivalMode::kRandom}) {
        const SeparationResult r = SeparationOracle(y, m, x, mode, order);
        CHECK(r.value >= TargetConstant(mode) - 1e-9);
        double v = 0.0;
        for (int i = 0; i < n; ++i) v += r.q.q[i] * y[i];
        CHECK(v == doctest::Approx(r.value));
      }
    }
  }

  TEST_CASE("build reaches one half for a fixed order") {
    auto m = Rank1(2);
    const std::vector<double> x{0.5, 0.5};
    const RandomizedCrs s = BuildRandomizedCrs(m, x, ArrivalMode::kFixed, std::vector<Element>{0, 1},
                                               TargetConstant(ArrivalMode::kFixed));
    CHECK(s.c >= 0.5 - 1e-6);
    const MixtureCheck check = VerifyMixture(s);
    CHECK(check.ok);
    for (int i = 0; i < 2; ++i) CHECK(check.q[i] >= (0.5 - 1e-6) * x[i]);
    double total = 0.0;
    for (double w : s.weights) {
      CHECK(w >= -1e-12);
      total += w;
    }
    CHECK(total == doctest::Approx(1.0));
  }

  TEST_CASE("two-element ceiling") {
    const double eps = 0.01;
    auto m = Rank1(2);
    BuildOptions opt;
    opt.to_optimality = true;
    opt.separation.optimal = true;
    const RandomizedCrs s = BuildRandomizedCrs(m, std::vector<double>{1 - eps, eps}, ArrivalMode::kFixed,
                                               std::vector<Element>{0, 1}, 0.5, opt);
    CHECK(s.c >= 0.5 - 1e-9);
    CHECK(s.c <= 0.5 + eps / 2 + 1e-6);
  }

  TEST_CASE("random order reaches one minus one over e") {
    const int n = 5;
    auto m = Rank1(n);
    const std::vector<double> x(n, 1.0 / n);
    const RandomizedCrs s =
        BuildRandomizedCrs(m, x, ArrivalMode::kRandom, {}, TargetConstant(ArrivalMode::kRandom));
    CHECK(s.c >= 1 - std::exp(-1.0) - 1e-6);
    const MixtureCheck check = VerifyMixture(s);
    CHECK(check.ok);
    double avg = 0.0;
    for (int i = 0; i < n; ++i) avg += check.q[i] / x[i] / n;
    // No scheme can select with average ratio above Pr[some element active].
    CHECK(avg <= 1 - std::pow(0.8, 5) + 1e-9);
  }

  TEST_CASE("execution of a built scheme") {
    auto m = Rank1(2);
    const std::vector<double> x{0.5, 0.5};
    auto s = std::make_shared<RandomizedCrs>(BuildRandomizedCrs(
        m, x, ArrivalMode::kFixed, std::vector<Element>{0, 1}, 0.5));
    Rng rng(43);
    CHECK_THROWS_AS(ExecuteRandomizedCrs(*s, ArrivalMode::kRandom, TimedArrival({0.2, 0.4}),
                                         ElementSet(2, {0}), rng),
                    MismatchError);
    const std::vector<double> mix = s->MixtureQ();
    const int trials = 200000;
    std::vector<int> hits(2, 0);
    for (int k = 0; k < trials; ++k) {
      const ElementSet active = SampleActiveSet(x, rng);
      const SelectionTrace t =
          ExecuteRandomizedCrs(*s, ArrivalMode::kFixed, IdentityArrival(2), active, rng);
      for (Element e : t.accepted) ++hits[e];
    }
    for (int i = 0; i < 2; ++i) {
      const double p = hits[i] / double(trials);
      CHECK(std::abs(p - mix[i]) <= 4 * std::sqrt(p * (1 - p) / trials));
    }
  }

  TEST_CASE("single-policy mixture is that policy") {
    auto m = Rank1(2);
    RandomizedCrs s;
    s.matroid = m;
    s.x = {0.5, 0.5};
    s.order = {0, 1};
    s.policies = {PairThresholdPolicy()};
    s.weights = {1.0};
    Rng rng(44);
    for (std::uint64_t mask = 0; mask < 4; ++mask) {
      const ElementSet active = ElementSet::FromMask(2, mask);
      const SelectionTrace t =
          ExecuteRandomizedCrs(s, ArrivalMode::kFixed, IdentityArrival(2), active, rng);
      CHECK(t.AcceptedSet(2) == RunPolicy(*s.policies[0], *m, s.order, active));
    }
  }

  TEST_CASE("worst fixed order on a small hat") {
    const HatExample hat = MakeHat(1);
    const WorstOrderResult w = BuildWorstOrder(hat.matroid, hat.x);
    CHECK(w.orders == 6);
    CHECK(w.c >= 0.5 - 1e-6);
  }

  TEST_CASE("policy fingerprints separate policies") {
    auto m = Rank1(2);
    const std::vector<double> x{0.5, 0.5};
    const std::vector<Element> order{0, 1};
    TablePolicy never(m, "never");
    const QResult a = ExactQ(*PairThresholdPolicy(), *m, x, ArrivalMode::kFixed, order);
    const QResult b = ExactQ(never, *m, x, ArrivalMode::kFixed, order);
    CHECK(a.fingerprint != b.fingerprint);
    CHECK(a.fingerprint == ExactQ(*PairThresholdPolicy(), *m, x, ArrivalMode::kFixed, order).fingerprint);
  }
}
