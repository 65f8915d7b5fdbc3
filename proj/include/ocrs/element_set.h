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

#ifndef OCRS_ELEMENT_SET_H_
#define OCRS_ELEMENT_SET_H_

#include <array>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace ocrs {

using Element = int;

// Subset of a ground set {0, ..., universe-1}, stored as a fixed-width
// bitset so that copies never allocate. Universes are limited to
// kMaxUniverse elements.
class ElementSet {
 public:
  static constexpr int kMaxUniverse = 256;

  ElementSet() = default;
  explicit ElementSet(int universe);
  ElementSet(int universe, std::initializer_list<Element> elements);
  ElementSet(int universe, std::span<const Element> elements);

  static ElementSet Full(int universe);
  // Requires universe <= 64.
  static ElementSet FromMask(int universe, std::uint64_t mask);

  int universe() const { return universe_; }
  bool contains(Element e) const {
    return e >= 0 && e < universe_ && ((words_[e >> 6] >> (e & 63)) & 1u);
  }
  void insert(Element e);
  void erase(Element e);
  ElementSet with(Element e) const {
    ElementSet s = *this;
    s.insert(e);
    return s;
  }
  ElementSet without(Element e) const {
    ElementSet s = *this;
    s.erase(e);
    return s;
  }

  int size() const {
    int total = 0;
    for (std::uint64_t w : words_) total += std::popcount(w);
    return total;
  }
  bool empty() const {
    for (std::uint64_t w : words_) {
      if (w != 0) return false;
    }
    return true;
  }

  // Requires universe <= 64.
  std::uint64_t mask() const;
  std::vector<Element> elements() const;

  // Visits members in ascending order.
  template <typename F>
  void for_each(F&& f) const {
    for (int w = 0; w < kWords; ++w) {
      std::uint64_t bits = words_[w];
      while (bits != 0) {
        f(static_cast<Element>(w * 64 + std::countr_zero(bits)));
        bits &= bits - 1;
      }
    }
  }

  bool is_subset_of(const ElementSet& other) const;
  bool intersects(const ElementSet& other) const;

  ElementSet operator|(const ElementSet& o) const;
  ElementSet operator&(const ElementSet& o) const;
  ElementSet operator-(const ElementSet& o) const;

  friend bool operator==(const ElementSet& a, const ElementSet& b) {
    return a.universe_ == b.universe_ && a.words_ == b.words_;
  }

  std::size_t hash() const;
  std::string to_string() const;

 private:
  static constexpr int kWords = kMaxUniverse / 64;
  void check_same_universe(const ElementSet& o) const;

  int universe_ = 0;
  std::array<std::uint64_t, kWords> words_{};
};

struct ElementSetHash {
  std::size_t operator()(const ElementSet& s) const { return s.hash(); }
};

}  // namespace ocrs

#endif  // OCRS_ELEMENT_SET_H_
