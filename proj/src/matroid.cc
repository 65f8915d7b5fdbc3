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

#include "ocrs/matroid.h"

#include <algorithm>
#include <bit>
#include <numeric>
#include <string>
#include <utility>

#include "ocrs/errors.h"

namespace ocrs {
namespace {

// Union-find with path halving. Created per call; the matroid stays
// stateless.
class DisjointSets {
 public:
  explicit DisjointSets(int n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }
  int Find(int v) {
    while (parent_[v] != v) {
      parent_[v] = parent_[parent_[v]];
      v = parent_[v];
    }
    return v;
  }
  bool Union(int a, int b) {
    a = Find(a);
    b = Find(b);
    if (a == b) return false;
    parent_[a] = b;
    return true;
  }

 private:
  std::vector<int> parent_;
};

std::vector<int> ToIntList(const ElementSet& s) {
  std::vector<int> out;
  s.for_each([&](Element e) { out.push_back(e); });
  return out;
}

}  // namespace

Matroid::Matroid(int n) : n_(n) {
  if (n < 0 || n > ElementSet::kMaxUniverse) {
    throw InputError("matroid ground set size " + std::to_string(n) +
                     " outside [0, " +
                     std::to_string(ElementSet::kMaxUniverse) + "]");
  }
}

void Matroid::CheckSet(const ElementSet& s) const {
  if (s.universe() != n_) {
    throw InputError("element set over ground set of size " +
                     std::to_string(s.universe()) + ", matroid has " +
                     std::to_string(n_));
  }
}

bool Matroid::IsIndependent(const ElementSet& s) const {
  CheckSet(s);
  return IsIndependentImpl(s);
}

int Matroid::Rank(const ElementSet& s) const {
  CheckSet(s);
  return RankImpl(s);
}

int Matroid::RankImpl(const ElementSet& s) const {
  return Basis(s).size();
}

ElementSet Matroid::Basis(const ElementSet& s) const {
  CheckSet(s);
  ElementSet basis(n_);
  s.for_each([&](Element e) {
    ElementSet candidate = basis.with(e);
    if (IsIndependentImpl(candidate)) basis = candidate;
  });
  return basis;
}

ElementSet Matroid::Span(const ElementSet& a) const {
  const ElementSet basis = Basis(a);
  ElementSet span = a;
  for (Element e = 0; e < n_; ++e) {
    if (span.contains(e)) continue;
    if (!IsIndependentImpl(basis.with(e))) span.insert(e);
  }
  return span;
}

// --- Uniform ---------------------------------------------------------------

UniformMatroid::UniformMatroid(int n, int rank) : Matroid(n), rank_(rank) {
  if (rank < 0) throw InputError("uniform matroid rank must be >= 0");
}

bool UniformMatroid::IsIndependentImpl(const ElementSet& s) const {
  return s.size() <= rank_;
}

int UniformMatroid::RankImpl(const ElementSet& s) const {
  return std::min(s.size(), rank_);
}

nlohmann::json UniformMatroid::ToJson() const {
  return {{"kind", "uniform"}, {"n", size()}, {"rank", rank_}};
}

// --- Partition -------------------------------------------------------------

namespace {
int TotalSize(const std::vector<std::vector<int>>& blocks) {
  std::size_t total = 0;
  for (const auto& b : blocks) total += b.size();
  return static_cast<int>(total);
}
}  // namespace

PartitionMatroid::PartitionMatroid(std::vector<std::vector<int>> blocks,
                                   std::vector<int> capacities)
    : Matroid(TotalSize(blocks)),
      blocks_(std::move(blocks)),
      capacities_(std::move(capacities)),
      block_of_(size(), -1) {
  if (blocks_.size() != capacities_.size()) {
    throw InputError("partition matroid needs one capacity per block");
  }
  for (std::size_t b = 0; b < blocks_.size(); ++b) {
    if (capacities_[b] < 0) {
      throw InputError("partition capacities must be >= 0");
    }
    for (int e : blocks_[b]) {
      if (e < 0 || e >= size()) {
        throw InputError("partition block element " + std::to_string(e) +
                         " out of range");
      }
      if (block_of_[e] != -1) {
        throw InputError("element " + std::to_string(e) +
                         " appears in more than one block");
      }
      block_of_[e] = static_cast<int>(b);
    }
  }
}

bool PartitionMatroid::IsIndependentImpl(const ElementSet& s) const {
  std::vector<int> used(blocks_.size(), 0);
  bool ok = true;
  s.for_each([&](Element e) {
    const int b = block_of_[e];
    if (++used[b] > capacities_[b]) ok = false;
  });
  return ok;
}

int PartitionMatroid::RankImpl(const ElementSet& s) const {
  std::vector<int> used(blocks_.size(), 0);
  s.for_each([&](Element e) { ++used[block_of_[e]]; });
  int rank = 0;
  for (std::size_t b = 0; b < blocks_.size(); ++b) {
    rank += std::min(used[b], capacities_[b]);
  }
  return rank;
}

nlohmann::json PartitionMatroid::ToJson() const {
  return {{"kind", "partition"},
          {"blocks", blocks_},
          {"capacities", capacities_}};
}

// --- Graphic ---------------------------------------------------------------

GraphicMatroid::GraphicMatroid(int vertices,
                               std::vector<std::pair<int, int>> edges)
    : Matroid(static_cast<int>(edges.size())),
      vertices_(vertices),
      edges_(std::move(edges)) {
  if (vertices < 0) throw InputError("vertex count must be >= 0");
  for (const auto& [u, v] : edges_) {
    if (u < 0 || u >= vertices || v < 0 || v >= vertices) {
      throw InputError("edge endpoint out of range");
    }
  }
}

bool GraphicMatroid::IsIndependentImpl(const ElementSet& s) const {
  DisjointSets forest(vertices_);
  bool acyclic = true;
  s.for_each([&](Element e) {
    if (acyclic && !forest.Union(edges_[e].first, edges_[e].second)) {
      acyclic = false;
    }
  });
  return acyclic;
}

int GraphicMatroid::RankImpl(const ElementSet& s) const {
  DisjointSets forest(vertices_);
  int rank = 0;
  s.for_each([&](Element e) {
    if (forest.Union(edges_[e].first, edges_[e].second)) ++rank;
  });
  return rank;
}

nlohmann::json GraphicMatroid::ToJson() const {
  nlohmann::json edges = nlohmann::json::array();
  for (const auto& [u, v] : edges_) edges.push_back({u, v});
  return {{"kind", "graphic"}, {"vertices", vertices_}, {"edges", edges}};
}

// --- Explicit --------------------------------------------------------------

ExplicitMatroid::ExplicitMatroid(
    int n, const std::vector<std::vector<int>>& independent_sets)
    : Matroid(n) {
  if (n > kMaxElements) {
    throw InputError("explicit matroids are limited to " +
                     std::to_string(kMaxElements) + " elements");
  }
  const std::uint32_t subsets = std::uint32_t{1} << n;
  independent_.assign(subsets, false);
  independent_[0] = true;
  for (const auto& set : independent_sets) {
    std::uint32_t mask = 0;
    for (int e : set) {
      if (e < 0 || e >= n) {
        throw InputError("independent set element " + std::to_string(e) +
                         " out of range");
      }
      if (mask & (1u << e)) {
        throw InputError("duplicate element in independent set");
      }
      mask |= 1u << e;
    }
    independent_[mask] = true;
  }
  for (std::uint32_t mask = 1; mask < subsets; ++mask) {
    if (!independent_[mask]) continue;
    for (std::uint32_t bits = mask; bits != 0; bits &= bits - 1) {
      if (!independent_[mask & ~(bits & (~bits + 1))]) {
        throw InputError("independent sets are not closed under subsets");
      }
    }
  }
  // The size-of-largest-independent-subset function is submodular iff the
  // family satisfies the exchange axiom; local submodularity suffices.
  std::vector<int> rank(subsets, 0);
  for (std::uint32_t mask = 1; mask < subsets; ++mask) {
    if (independent_[mask]) {
      rank[mask] = std::popcount(mask);
      continue;
    }
    int best = 0;
    for (std::uint32_t bits = mask; bits != 0; bits &= bits - 1) {
      best = std::max(best, rank[mask & ~(bits & (~bits + 1))]);
    }
    rank[mask] = best;
  }
  for (std::uint32_t mask = 0; mask < subsets; ++mask) {
    for (int e = 0; e < n; ++e) {
      if (mask & (1u << e)) continue;
      for (int f = e + 1; f < n; ++f) {
        if (mask & (1u << f)) continue;
        const std::uint32_t me = mask | (1u << e);
        const std::uint32_t mf = mask | (1u << f);
        if (rank[me] + rank[mf] < rank[me | mf] + rank[mask]) {
          throw InputError(
              "independent sets violate the matroid exchange axiom");
        }
      }
    }
  }
}

ExplicitMatroid ExplicitMatroid::FromOracle(const Matroid& m) {
  const int n = m.size();
  if (n > kMaxElements) {
    throw CapExceededError("matroid too large to list explicitly");
  }
  std::vector<std::vector<int>> sets;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    ElementSet s = ElementSet::FromMask(n, mask);
    if (m.IsIndependent(s)) sets.push_back(ToIntList(s));
  }
  return ExplicitMatroid(n, sets);
}

bool ExplicitMatroid::IsIndependentImpl(const ElementSet& s) const {
  return independent_[static_cast<std::size_t>(s.mask())];
}

nlohmann::json ExplicitMatroid::ToJson() const {
  nlohmann::json sets = nlohmann::json::array();
  for (std::size_t mask = 0; mask < independent_.size(); ++mask) {
    if (!independent_[mask]) continue;
    sets.push_back(ToIntList(ElementSet::FromMask(size(), mask)));
  }
  return {{"kind", "explicit"}, {"n", size()}, {"independent_sets", sets}};
}

// --- Contraction -----------------------------------------------------------

ContractedMatroid::ContractedMatroid(MatroidPtr base, ElementSet contracted)
    : Matroid(base->size()),
      base_(std::move(base)),
      contracted_(contracted),
      contracted_basis_(base_->Basis(contracted)) {}

bool ContractedMatroid::IsIndependentImpl(const ElementSet& s) const {
  if (s.intersects(contracted_)) return false;
  // basis(A) spans A, so rank(S + A) = |S| + rank(A) iff S + basis(A) is
  // independent.
  return base_->IsIndependent(s | contracted_basis_);
}

nlohmann::json ContractedMatroid::ToJson() const {
  return {{"kind", "contracted"},
          {"base", base_->ToJson()},
          {"contracted", ToIntList(contracted_)}};
}

ContractedMatroid Contract(MatroidPtr m, const ElementSet& a) {
  return ContractedMatroid(std::move(m), a);
}

// --- Greedy ----------------------------------------------------------------

namespace {

std::vector<Element> GreedyOrder(const Matroid& m,
                                 std::span<const double> weights) {
  if (static_cast<int>(weights.size()) != m.size()) {
    throw InputError("expected " + std::to_string(m.size()) +
                     " weights, got " + std::to_string(weights.size()));
  }
  std::vector<Element> order;
  for (Element e = 0; e < m.size(); ++e) {
    if (!(weights[e] >= 0.0)) {
      throw InputError("weights must be nonnegative numbers");
    }
    if (weights[e] > 0.0) order.push_back(e);
  }
  std::stable_sort(order.begin(), order.end(), [&](Element a, Element b) {
    return weights[a] > weights[b];
  });
  return order;
}

}  // namespace

ElementSet MaxWeightIndependentSet(const Matroid& m,
                                   std::span<const double> weights) {
  ElementSet chosen(m.size());
  for (Element e : GreedyOrder(m, weights)) {
    ElementSet candidate = chosen.with(e);
    if (m.IsIndependent(candidate)) chosen = candidate;
  }
  return chosen;
}

ElementSet MaxWeightIndependentSetContracted(const Matroid& m,
                                             const ElementSet& a_basis,
                                             std::span<const double> weights) {
  ElementSet chosen(m.size());
  ElementSet with_base = a_basis;
  for (Element e : GreedyOrder(m, weights)) {
    if (a_basis.contains(e)) continue;
    ElementSet candidate = with_base.with(e);
    if (m.IsIndependent(candidate)) {
      with_base = candidate;
      chosen.insert(e);
    }
  }
  return chosen;
}

double SetWeight(const ElementSet& s, std::span<const double> weights) {
  double total = 0.0;
  s.for_each([&](Element e) { total += weights[e]; });
  return total;
}

// --- JSON ------------------------------------------------------------------

MatroidPtr MatroidFromJson(const nlohmann::json& j) {
  try {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "uniform") {
      return std::make_shared<UniformMatroid>(j.at("n").get<int>(),
                                              j.at("rank").get<int>());
    }
    if (kind == "partition") {
      return std::make_shared<PartitionMatroid>(
          j.at("blocks").get<std::vector<std::vector<int>>>(),
          j.at("capacities").get<std::vector<int>>());
    }
    if (kind == "graphic") {
      std::vector<std::pair<int, int>> edges;
      for (const auto& e : j.at("edges")) {
        if (!e.is_array() || e.size() != 2) {
          throw InputError("graphic edges must be [u, v] pairs");
        }
        edges.emplace_back(e[0].get<int>(), e[1].get<int>());
      }
      return std::make_shared<GraphicMatroid>(j.at("vertices").get<int>(),
                                              std::move(edges));
    }
    if (kind == "explicit") {
      return std::make_shared<ExplicitMatroid>(
          j.at("n").get<int>(),
          j.at("independent_sets").get<std::vector<std::vector<int>>>());
    }
    throw InputError("unknown matroid kind '" + kind + "'");
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed matroid JSON: ") + e.what());
  }
}

}  // namespace ocrs
