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
#include <string>
#include <vector>

#include "doctest.h"
#include "ocrs/element_set.h"
#include "ocrs/errors.h"
#include "ocrs/kernels.h"
#include "ocrs/lp.h"
#include "ocrs/matroid.h"
#include "ocrs/parallel.h"
#include "ocrs/rng.h"
#include "oracles.h"

using namespace ocrs;
using ocrs::testing::BruteContractedMax;
using ocrs::testing::BruteRank;
using ocrs::testing::IsForest;

namespace {

std::shared_ptr<GraphicMatroid> Hat2() {
  // u1 = 0, u2 = 1, v1 = 2, v2 = 3; base edge last.
  return std::make_shared<GraphicMatroid>(
      4, std::vector<std::pair<int, int>>{{0, 2}, {2, 1}, {0, 3}, {3, 1}, {0, 1}});
}

std::vector<MatroidPtr> SampleMatroids() {
  return {
      std::make_shared<UniformMatroid>(5, 2),
      std::make_shared<UniformMatroid>(4, 0),
      std::make_shared<PartitionMatroid>(
          std::vector<std::vector<int>>{{0, 3}, {1, 2, 4}, {5}}, std::vector<int>{1, 2, 0}),
      Hat2(),
      std::make_shared<GraphicMatroid>(
          3, std::vector<std::pair<int, int>>{{0, 1}, {1, 2}, {0, 2}, {0, 1}, {2, 2}}),
  };
}

}  // namespace

TEST_SUITE("core") {
  TEST_CASE("element set basics") {
    ElementSet s(70, {1, 5, 69});
    CHECK(s.size() == 3);
    CHECK(s.contains(69));
    CHECK_FALSE(s.contains(2));
    CHECK(s.with(2).size() == 4);
    CHECK(s.without(5).elements() == std::vector<Element>{1, 69});
    CHECK((s - ElementSet(70, {1})).size() == 2);
    CHECK(ElementSet::Full(3).mask() == 7u);
    CHECK(ElementSet::FromMask(4, 0b1010).elements() == std::vector<Element>{1, 3});
    CHECK_THROWS_AS(s.insert(70), InputError);
    CHECK_THROWS_AS(ElementSet(257), InputError);
    CHECK_THROWS_AS((void)(s | ElementSet(5)), InputError);
  }

  TEST_CASE("uniform rank-1 rejects pairs") {
    UniformMatroid m(3, 1);
    CHECK_FALSE(m.IsIndependent(ElementSet(3, {0, 1})));
    CHECK(m.IsIndependent(ElementSet(3)));
    CHECK(m.Rank(ElementSet(3, {0, 1, 2})) == 1);
    CHECK(m.Span(ElementSet(3, {0})) == ElementSet::Full(3));
    CHECK_THROWS_AS(m.IsIndependent(ElementSet(4)), InputError);
  }

  TEST_CASE("uniform rank is capped") {
    UniformMatroid m(5, 2);
    CHECK(m.Rank(ElementSet(5, {0, 1, 2})) == 2);
    CHECK(m.Rank(ElementSet(5)) == 0);
  }

  TEST_CASE("hat example") {
    auto m = Hat2();
    CHECK_FALSE(m->IsIndependent(ElementSet(5, {0, 1, 4})));
    CHECK(m->Rank(ElementSet::Full(5)) == 3);
    CHECK(BruteRank(*m, 0b11111) == 3);
    CHECK(m->Span(ElementSet(5, {0, 1})).contains(4));
    // Contracting the base edge makes each hat pair dependent.
    ContractedMatroid c = Contract(m, ElementSet(5, {4}));
    CHECK_FALSE(c.IsIndependent(ElementSet(5, {0, 1})));
    CHECK(c.IsIndependent(ElementSet(5, {0, 3})));
    const std::vector<double> ones(5, 1.0);
    const ElementSet best = MaxWeightIndependentSet(*m, ones);
    CHECK(best.size() == 3);
    CHECK(best == ElementSet(5, {0, 1, 2}));
  }

  TEST_CASE("graphic independence matches union-find") {
    for (const MatroidPtr& base : SampleMatroids()) {
      auto g = std::dynamic_pointer_cast<const GraphicMatroid>(base);
      if (!g) continue;
      for (std::uint64_t s = 0; s < (1ull << g->size()); ++s) {
        CHECK(g->IsIndependent(ElementSet::FromMask(g->size(), s)) ==
              IsForest(g->vertices(), g->edges(), s));
      }
    }
  }

  TEST_CASE("rank, span and contraction agree with enumeration") {
    for (const MatroidPtr& m : SampleMatroids()) {
      const int n = m->size();
      bool loopless = true;
      for (int i = 0; i < n; ++i) loopless &= m->Rank(ElementSet(n, {i})) == 1;
      if (loopless) CHECK(m->Span(ElementSet(n)).empty());
      for (std::uint64_t s = 0; s < (1ull << n); ++s) {
        const ElementSet set = ElementSet::FromMask(n, s);
        const int r = BruteRank(*m, s);
        CHECK(m->Rank(set) == r);
        CHECK(m->Basis(set).size() == r);
        for (int i = 0; i < n; ++i) {
          CHECK(m->Span(set).contains(i) == (BruteRank(*m, s | (1ull << i)) == r));
        }
      }
      for (std::uint64_t a = 0; a < (1ull << n); a += 3) {
        ContractedMatroid c = Contract(m, ElementSet::FromMask(n, a));
        const int ra = BruteRank(*m, a);
        for (std::uint64_t s = 0; s < (1ull << n); ++s) {
          const bool expect = !(s & a) && BruteRank(*m, s | a) == __builtin_popcountll(s) + ra;
          CHECK(c.IsIndependent(ElementSet::FromMask(n, s)) == expect);
        }
      }
      ContractedMatroid none = Contract(m, ElementSet(n));
      for (std::uint64_t s = 0; s < (1ull << n); ++s) {
        CHECK(none.IsIndependent(ElementSet::FromMask(n, s)) ==
              m->IsIndependent(ElementSet::FromMask(n, s)));
      }
    }
  }

  TEST_CASE("max-weight greedy is optimal") {
    Rng rng(7);
    for (const MatroidPtr& m : SampleMatroids()) {
      const int n = m->size();
      for (int trial = 0; trial < 20; ++trial) {
        std::vector<double> w(n);
        for (double& v : w) v = std::floor(rng.uniform() * 4.0);
        const ElementSet best = MaxWeightIndependentSet(*m, w);
        CHECK(m->IsIndependent(best));
        CHECK(SetWeight(best, w) == doctest::Approx(BruteContractedMax(*m, 0, w)));
        const std::uint64_t a = rng.below(1ull << n);
        const ElementSet abasis = m->Basis(ElementSet::FromMask(n, a));
        const ElementSet rest = MaxWeightIndependentSetContracted(*m, abasis, w);
        CHECK(SetWeight(rest, w) == doctest::Approx(BruteContractedMax(*m, a, w)));
      }
    }
    UniformMatroid r1(3, 1);
    CHECK(MaxWeightIndependentSet(r1, std::vector<double>{2, 1, 3}) == ElementSet(3, {2}));
    CHECK(MaxWeightIndependentSet(r1, std::vector<double>{0, 0, 0}).empty());
    CHECK_THROWS_AS(MaxWeightIndependentSet(r1, std::vector<double>{1, -1, 0}), InputError);
  }

  TEST_CASE("explicit matroids are checked") {
    ExplicitMatroid ok(3, {{}, {0}, {1}, {2}, {0, 1}, {0, 2}});
    CHECK(ok.Rank(ElementSet::Full(3)) == 2);
    CHECK_FALSE(ok.IsIndependent(ElementSet(3, {1, 2})));
    // Not closed under subsets.
    CHECK_THROWS_AS(ExplicitMatroid(2, {{}, {0, 1}}), InputError);
    // Fails exchange: {0,1} and {2} with nothing to add to {2}.
    CHECK_THROWS_AS(ExplicitMatroid(3, {{}, {0}, {1}, {2}, {0, 1}}), InputError);
    const ExplicitMatroid copy = ExplicitMatroid::FromOracle(*Hat2());
    for (std::uint64_t s = 0; s < 32; ++s) {
      CHECK(copy.IsIndependent(ElementSet::FromMask(5, s)) ==
            Hat2()->IsIndependent(ElementSet::FromMask(5, s)));
    }
  }

  TEST_CASE("matroid json round trip") {
    for (const MatroidPtr& m : SampleMatroids()) {
      MatroidPtr back = MatroidFromJson(m->ToJson());
      CHECK(back->kind() == m->kind());
      for (std::uint64_t s = 0; s < (1ull << m->size()); ++s) {
        CHECK(back->Rank(ElementSet::FromMask(m->size(), s)) ==
              m->Rank(ElementSet::FromMask(m->size(), s)));
      }
    }
    CHECK_THROWS_AS(MatroidFromJson(nlohmann::json{{"kind", "bogus"}}), InputError);
    CHECK_THROWS_AS(MatroidFromJson(nlohmann::json::parse(
                        R"({"kind":"partition","blocks":[[0],[0]],"capacities":[1,1]})")),
                    InputError);
  }

  TEST_CASE("simplex on a textbook problem") {
    lp::Problem p;
    p.objective = {3, 5};
    p.constraints = {{{1, 0}, lp::Sense::kLessEqual, 4},
                     {{0, 2}, lp::Sense::kLessEqual, 12},
                     {{3, 2}, lp::Sense::kLessEqual, 18}};
    const lp::Solution s = lp::Maximize(p);
    REQUIRE(s.status == lp::Status::kOptimal);
    CHECK(s.objective == doctest::Approx(36));
    CHECK(s.primal[0] == doctest::Approx(2));
    CHECK(s.primal[1] == doctest::Approx(6));
    CHECK(s.duals[0] == doctest::Approx(0).epsilon(1e-9));
    CHECK(s.duals[1] == doctest::Approx(1.5));
    CHECK(s.duals[2] == doctest::Approx(1));
  }

  TEST_CASE("simplex equality, infeasible and unbounded") {
    lp::Problem p;
    p.objective = {-1, -2};
    p.constraints = {{{1, 1}, lp::Sense::kEqual, 1}, {{1, 0}, lp::Sense::kGreaterEqual, 0.25}};
    lp::Solution s = lp::Maximize(p);
    REQUIRE(s.status == lp::Status::kOptimal);
    CHECK(s.objective == doctest::Approx(-1));
    CHECK(s.primal[0] == doctest::Approx(1));

    p.constraints.push_back({{1, 0}, lp::Sense::kLessEqual, -1});
    CHECK(lp::Maximize(p).status == lp::Status::kInfeasible);

    lp::Problem u;
    u.objective = {1, 0};
    u.constraints = {{{0, 1}, lp::Sense::kLessEqual, 1}};
    CHECK(lp::Maximize(u).status == lp::Status::kUnbounded);
  }

  TEST_CASE("simplex duals satisfy strong duality on random problems") {
    Rng rng(11);
    for (int trial = 0; trial < 30; ++trial) {
      lp::Problem p;
      const int vars = 2 + static_cast<int>(rng.below(4));
      const int rows = 1 + static_cast<int>(rng.below(4));
      for (int j = 0; j < vars; ++j) p.objective.push_back(rng.uniform());
      for (int r = 0; r < rows; ++r) {
        lp::Constraint c;
        for (int j = 0; j < vars; ++j) c.coefficients.push_back(0.1 + rng.uniform());
        c.rhs = 1.0 + rng.uniform();
        p.constraints.push_back(c);
      }
      const lp::Solution s = lp::Maximize(p);
      REQUIRE(s.status == lp::Status::kOptimal);
      double dual = 0.0;
      for (int r = 0; r < rows; ++r) {
        CHECK(s.duals[r] >= -1e-9);
        dual += s.duals[r] * p.constraints[r].rhs;
      }
      CHECK(dual == doctest::Approx(s.objective));
      for (int j = 0; j < vars; ++j) {
        double reduced = p.objective[j];
        for (int r = 0; r < rows; ++r) reduced -= s.duals[r] * p.constraints[r].coefficients[j];
        CHECK(reduced <= 1e-9);
      }
    }
  }

  TEST_CASE("kernel variants agree with the scalar reference") {
    const kernels::KernelTable& ref = kernels::ScalarKernels();
    std::vector<const kernels::KernelTable*> variants;
    if (kernels::IsaSupported(kernels::Isa::kAvx2) && kernels::Avx2Kernels()) {
      variants.push_back(kernels::Avx2Kernels());
    }
    if (kernels::IsaSupported(kernels::Isa::kNeon) && kernels::NeonKernels()) {
      variants.push_back(kernels::NeonKernels());
    }
    MESSAGE("active isa: " << std::string(kernels::IsaName(kernels::ActiveIsa())) << ", variants tested: "
                           << variants.size());
    Rng rng(3);
    for (int n = 0; n <= 11; ++n) {
      std::vector<double> x(n);
      for (double& v : x) v = rng.uniform();
      std::vector<double> w_ref(1u << n), w_var(1u << n);
      ref.pattern_weights(x, w_ref);
      double total = 0.0;
      for (double v : w_ref) total += v;
      CHECK(total == doctest::Approx(1.0));
      std::vector<std::uint64_t> sel(1u << n);
      for (auto& s : sel) s = rng.engine()() & ((1ull << n) - 1);
      std::vector<double> q_ref(n, 0.25), q_var(n, 0.25);
      ref.accumulate_selected(w_ref, sel, q_ref);
      std::vector<double> u(n);
      for (double& v : u) v = rng.uniform();
      for (const kernels::KernelTable* k : variants) {
        k->pattern_weights(x, w_var);
        for (std::size_t m = 0; m < w_ref.size(); ++m) {
          CHECK(w_var[m] == doctest::Approx(w_ref[m]).epsilon(1e-14));
        }
        std::fill(q_var.begin(), q_var.end(), 0.25);
        k->accumulate_selected(w_ref, sel, q_var);
        for (int i = 0; i < n; ++i) CHECK(q_var[i] == doctest::Approx(q_ref[i]).epsilon(1e-13));
        CHECK(k->dot(x, u) == doctest::Approx(ref.dot(x, u)).epsilon(1e-13));
        CHECK(k->below_mask(u, x) == ref.below_mask(u, x));
      }
    }
  }

  TEST_CASE("parallel chunks merge in order and propagate errors") {
    const auto parts = ParallelChunks<long>(10000, 97, 4, [](std::int64_t b, std::int64_t e, std::int64_t) {
      long s = 0;
      for (std::int64_t i = b; i < e; ++i) s += i;
      return s;
    });
    long total = 0;
    for (long v : parts) total += v;
    CHECK(total == 10000L * 9999 / 2);
    CHECK_THROWS_AS(ParallelChunks<int>(100, 10, 3,
                                        [](std::int64_t b, std::int64_t, std::int64_t) -> int {
                                          if (b == 50) throw InputError("boom");
                                          return 0;
                                        }),
                    InputError);
  }

  TEST_CASE("substreams are reproducible and distinct") {
    Rng a = Rng::Substream(5, 17), b = Rng::Substream(5, 17), c = Rng::Substream(5, 18);
    const double x = a.uniform();
    CHECK(x == b.uniform());
    CHECK(x != c.uniform());
  }
}
