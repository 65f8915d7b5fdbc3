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

#include "ocrs/corpus.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <string>
#include <utility>

#include "ocrs/errors.h"

namespace ocrs {
namespace {

class BinaryMatroid : public Matroid {
 public:
  explicit BinaryMatroid(std::vector<std::uint32_t> columns)
      : Matroid(static_cast<int>(columns.size())), columns_(std::move(columns)) {}
  std::string kind() const override { return "binary"; }
  nlohmann::json ToJson() const override {
    return {{"kind", kind()}, {"columns", columns_}};
  }

 protected:
  bool IsIndependentImpl(const ElementSet& s) const override {
    std::vector<std::uint32_t> basis;  // reduced rows, distinct leading bits
    bool ok = true;
    s.for_each([&](Element e) {
      if (!ok) return;
      std::uint32_t v = columns_[e];
      for (std::uint32_t b : basis) v = std::min(v, v ^ b);
      if (v == 0) {
        ok = false;
      } else {
        basis.push_back(v);
        std::sort(basis.begin(), basis.end(), std::greater<>());
      }
    });
    return ok;
  }

 private:
  std::vector<std::uint32_t> columns_;
};

std::vector<double> Dirichlet(int k, Rng& rng) {
  std::vector<double> w(k);
  double total = 0.0;
  for (double& v : w) {
    v = -std::log(1.0 - rng.uniform());
    total += v;
  }
  for (double& v : w) v /= total;
  return w;
}

}  // namespace

HatExample MakeHat(int hats) {
  if (hats < 1) throw InputError("a hat graph needs at least one hat");
  std::vector<std::pair<int, int>> edges;
  for (int j = 0; j < hats; ++j) {
    edges.emplace_back(0, 2 + j);
    edges.emplace_back(2 + j, 1);
  }
  edges.emplace_back(0, 1);
  HatExample h;
  h.hats = hats;
  h.base = 2 * hats;
  h.matroid = std::make_shared<GraphicMatroid>(hats + 2, std::move(edges));
  h.x.assign(2 * hats, 0.5);
  h.x.push_back(1.0);
  return h;
}

MatroidPtr RandomPartitionMatroid(int n, Rng& rng) {
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng.engine());
  std::vector<std::vector<int>> blocks;
  std::vector<int> caps;
  for (int i = 0; i < n;) {
    const int size = std::min<int>(n - i, 1 + static_cast<int>(rng.below(3)));
    std::vector<int> block(perm.begin() + i, perm.begin() + i + size);
    std::sort(block.begin(), block.end());
    blocks.push_back(std::move(block));
    caps.push_back(1 + static_cast<int>(rng.below(size)));
    i += size;
  }
  return std::make_shared<PartitionMatroid>(std::move(blocks), std::move(caps));
}

MatroidPtr RandomGraphicMatroid(int n, Rng& rng) {
  const int vertices = std::max(3, n / 2 + 1);
  std::vector<std::pair<int, int>> edges;
  for (int k = 0; k < n; ++k) {
    const int a = static_cast<int>(rng.below(vertices));
    int b = static_cast<int>(rng.below(vertices - 1));
    if (b >= a) ++b;
    edges.emplace_back(std::min(a, b), std::max(a, b));
  }
  return std::make_shared<GraphicMatroid>(vertices, std::move(edges));
}

MatroidPtr RandomBinaryMatroid(int n, int dim, Rng& rng) {
  if (dim < 1 || dim > 31) throw InputError("binary matroid dimension out of range");
  std::vector<std::uint32_t> columns(n);
  for (auto& c : columns) c = static_cast<std::uint32_t>(rng.below(std::uint64_t{1} << dim));
  BinaryMatroid oracle(std::move(columns));
  return std::make_shared<ExplicitMatroid>(ExplicitMatroid::FromOracle(oracle));
}

std::vector<double> RandomPolytopePoint(const Matroid& m, Rng& rng, int sets) {
  const int n = m.size();
  std::vector<double> x(n, 0.0);
  const std::vector<double> lambda = Dirichlet(sets, rng);
  for (int k = 0; k < sets; ++k) {
    std::vector<double> w(n);
    for (double& v : w) v = 0.01 + rng.uniform();
    MaxWeightIndependentSet(m, w).for_each([&](Element e) { x[e] += lambda[k]; });
  }
  const double scale = 0.5 + 0.5 * rng.uniform();
  for (double& v : x) v = std::min(1.0, v * scale);
  return x;
}

std::vector<double> RandomRank1Point(int n, Rng& rng) {
  std::vector<double> x = Dirichlet(n, rng);
  const double total = 0.2 + 0.8 * rng.uniform();
  for (double& v : x) v *= total;
  return x;
}

BernoulliInstance RandomBernoulliInstance(MatroidPtr m, Rng& rng) {
  BernoulliInstance inst;
  const int n = m->size();
  inst.matroid = std::move(m);
  for (int i = 0; i < n; ++i) {
    inst.p.push_back(0.05 + 0.95 * rng.uniform());
    inst.y.push_back(10.0 * rng.uniform());
  }
  return inst;
}

GeneralInstance RandomGeneralInstance(MatroidPtr m, Rng& rng, int max_atoms) {
  GeneralInstance inst;
  const int n = m->size();
  inst.matroid = std::move(m);
  for (int i = 0; i < n; ++i) {
    const int k = 1 + static_cast<int>(rng.below(max_atoms));
    std::vector<double> values;
    while (static_cast<int>(values.size()) < k) {
      const double v = std::round(1000.0 * rng.uniform()) / 100.0;
      if (std::find(values.begin(), values.end(), v) == values.end()) values.push_back(v);
    }
    std::vector<double> probs = Dirichlet(k, rng);
    double partial = 0.0;
    for (int a = 0; a + 1 < k; ++a) partial += probs[a];
    probs[k - 1] = std::max(0.0, 1.0 - partial);
    std::vector<Atom> atoms;
    for (int a = 0; a < k; ++a) atoms.push_back({values[a], probs[a]});
    inst.dists.emplace_back(std::move(atoms));
  }
  return inst;
}

std::vector<std::pair<std::string, nlohmann::json>> CanonicalCorpus() {
  std::vector<std::pair<std::string, nlohmann::json>> out;
  auto bernoulli = [&](const std::string& name, MatroidPtr m, std::vector<double> p,
                       std::vector<double> y, std::vector<double> x) {
    BernoulliInstance inst{std::move(m), std::move(p), std::move(y)};
    inst.Validate();
    nlohmann::json j = InstanceToJson(inst);
    j["x"] = std::move(x);
    out.emplace_back(name, std::move(j));
  };
  auto rank1 = std::make_shared<UniformMatroid>(2, 1);
  bernoulli("rank1_pair", rank1, {0.5, 0.5}, {1, 1}, {0.5, 0.5});
  bernoulli("rank1_skewed", rank1, {0.99, 0.01}, {1, 1}, {0.99, 0.01});
  for (int n : {2, 5, 10}) {
    std::vector<double> x(n, 1.0 / n);
    bernoulli("uniform_inv_n" + std::to_string(n),
              std::make_shared<UniformMatroid>(n, 1), x, std::vector<double>(n, 1.0), x);
  }
  bernoulli("uniform3_rank2", std::make_shared<UniformMatroid>(3, 2), {1, 0.5, 0.5},
            {3, 2, 1}, {1, 0.5, 0.5});
  for (int hats : {2, 4, 6}) {
    HatExample h = MakeHat(hats);
    bernoulli("hat" + std::to_string(hats), h.matroid, h.x,
              std::vector<double>(h.x.size(), 1.0), h.x);
  }
  for (int k = 1; k <= 3; ++k) {
    Rng rng = Rng::Substream(2026, k);
    auto pm = RandomPartitionMatroid(8, rng);
    BernoulliInstance bi = RandomBernoulliInstance(pm, rng);
    bernoulli("partition_seed" + std::to_string(k), pm, bi.p, bi.y,
              RandomPolytopePoint(*pm, rng));
    auto gm = RandomGraphicMatroid(8, rng);
    BernoulliInstance gi = RandomBernoulliInstance(gm, rng);
    bernoulli("graphic_seed" + std::to_string(k), gm, gi.p, gi.y,
              RandomPolytopePoint(*gm, rng));
  }
  for (int k = 1; k <= 2; ++k) {
    Rng rng = Rng::Substream(2027, k);
    GeneralInstance g = RandomGeneralInstance(RandomPartitionMatroid(5, rng), rng);
    out.emplace_back("general_seed" + std::to_string(k), InstanceToJson(g));
  }
  bernoulli("empty", std::make_shared<UniformMatroid>(0, 0), {}, {}, {});
  return out;
}

}  // namespace ocrs
