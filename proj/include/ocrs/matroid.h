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

#ifndef OCRS_MATROID_H_
#define OCRS_MATROID_H_

#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "ocrs/element_set.h"

namespace ocrs {

// Finite matroid over the ground set {0, ..., size()-1}. Implementations
// are immutable after construction and safe to share between threads.
class Matroid {
 public:
  explicit Matroid(int n);
  virtual ~Matroid() = default;

  int size() const { return n_; }
  virtual std::string kind() const = 0;

  // Throws InputError if `s` is over a different ground set.
  bool IsIndependent(const ElementSet& s) const;
  int Rank(const ElementSet& s) const;
  // { i : rank(A + i) = rank(A) }.
  ElementSet Span(const ElementSet& a) const;
  // A maximal independent subset of `s`, built greedily in id order.
  ElementSet Basis(const ElementSet& s) const;

  virtual nlohmann::json ToJson() const = 0;

 protected:
  virtual bool IsIndependentImpl(const ElementSet& s) const = 0;
  // Default: greedy insertion in ascending id order.
  virtual int RankImpl(const ElementSet& s) const;
  void CheckSet(const ElementSet& s) const;

 private:
  int n_;
};

using MatroidPtr = std::shared_ptr<const Matroid>;

class UniformMatroid : public Matroid {
 public:
  UniformMatroid(int n, int rank);
  std::string kind() const override { return "uniform"; }
  int rank_bound() const { return rank_; }
  nlohmann::json ToJson() const override;

 protected:
  bool IsIndependentImpl(const ElementSet& s) const override;
  int RankImpl(const ElementSet& s) const override;

 private:
  int rank_;
};

class PartitionMatroid : public Matroid {
 public:
  // Blocks must partition {0, ..., n-1}; n is the total block size.
  PartitionMatroid(std::vector<std::vector<int>> blocks,
                   std::vector<int> capacities);
  std::string kind() const override { return "partition"; }
  const std::vector<std::vector<int>>& blocks() const { return blocks_; }
  const std::vector<int>& capacities() const { return capacities_; }
  nlohmann::json ToJson() const override;

 protected:
  bool IsIndependentImpl(const ElementSet& s) const override;
  int RankImpl(const ElementSet& s) const override;

 private:
  std::vector<std::vector<int>> blocks_;
  std::vector<int> capacities_;
  std::vector<int> block_of_;
};

// Cycle matroid of a multigraph; element i is edges()[i]. A set is
// independent iff it is a forest (self-loops are always dependent).
class GraphicMatroid : public Matroid {
 public:
  GraphicMatroid(int vertices, std::vector<std::pair<int, int>> edges);
  std::string kind() const override { return "graphic"; }
  int vertices() const { return vertices_; }
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }
  nlohmann::json ToJson() const override;

 protected:
  bool IsIndependentImpl(const ElementSet& s) const override;
  int RankImpl(const ElementSet& s) const override;

 private:
  int vertices_;
  std::vector<std::pair<int, int>> edges_;
};

// Matroid given by listing every independent set. The listing is checked
// against the matroid axioms on construction. Limited to n <= 20.
class ExplicitMatroid : public Matroid {
 public:
  static constexpr int kMaxElements = 20;

  ExplicitMatroid(int n, const std::vector<std::vector<int>>& independent_sets);
  std::string kind() const override { return "explicit"; }
  // Enumerates independent sets of `m` (n <= kMaxElements).
  static ExplicitMatroid FromOracle(const Matroid& m);
  nlohmann::json ToJson() const override;

 protected:
  bool IsIndependentImpl(const ElementSet& s) const override;

 private:
  std::vector<bool> independent_;  // indexed by subset mask
};

// M/A over the same ground set: S is independent iff S and A are disjoint
// and rank(S + A) = |S| + rank(A). A may be dependent.
class ContractedMatroid : public Matroid {
 public:
  ContractedMatroid(MatroidPtr base, ElementSet contracted);
  std::string kind() const override { return "contracted"; }
  const ElementSet& contracted() const { return contracted_; }
  nlohmann::json ToJson() const override;

 protected:
  bool IsIndependentImpl(const ElementSet& s) const override;

 private:
  MatroidPtr base_;
  ElementSet contracted_;
  ElementSet contracted_basis_;
};

ContractedMatroid Contract(MatroidPtr m, const ElementSet& a);

// Greedy by descending weight, ties by ascending id; zero-weight elements
// are never taken. Throws InputError on negative or mismatched weights.
ElementSet MaxWeightIndependentSet(const Matroid& m,
                                   std::span<const double> weights);

// Same greedy restricted to M/A, with A represented by a basis of A.
// Used on hot paths where the contraction is rebuilt per call.
ElementSet MaxWeightIndependentSetContracted(const Matroid& m,
                                             const ElementSet& a_basis,
                                             std::span<const double> weights);

double SetWeight(const ElementSet& s, std::span<const double> weights);

// JSON form: {"kind":"uniform","n":5,"rank":2}, {"kind":"partition",
// "blocks":[[0,1],[2,3,4]],"capacities":[1,2]}, {"kind":"graphic",
// "vertices":4,"edges":[[0,1],...]}, {"kind":"explicit","n":4,
// "independent_sets":[[],[0],...]}.
MatroidPtr MatroidFromJson(const nlohmann::json& j);

}  // namespace ocrs

#endif  // OCRS_MATROID_H_
