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

#include "ocrs/element_set.h"

#include <sstream>

#include "ocrs/errors.h"

namespace ocrs {

ElementSet::ElementSet(int universe) : universe_(universe) {
  if (universe < 0 || universe > kMaxUniverse) {
    throw InputError("ground set size " + std::to_string(universe) +
                     " outside [0, " + std::to_string(kMaxUniverse) + "]");
  }
}

ElementSet::ElementSet(int universe, std::initializer_list<Element> elements)
    : ElementSet(universe) {
  for (Element e : elements) insert(e);
}

ElementSet::ElementSet(int universe, std::span<const Element> elements)
    : ElementSet(universe) {
  for (Element e : elements) insert(e);
}

ElementSet ElementSet::Full(int universe) {
  ElementSet s(universe);
  for (Element e = 0; e < universe; ++e) s.insert(e);
  return s;
}

ElementSet ElementSet::FromMask(int universe, std::uint64_t mask) {
  if (universe > 64) throw InputError("FromMask requires universe <= 64");
  ElementSet s(universe);
  if (universe < 64) mask &= (std::uint64_t{1} << universe) - 1;
  s.words_[0] = mask;
  return s;
}

void ElementSet::insert(Element e) {
  if (e < 0 || e >= universe_) {
    throw InputError("element " + std::to_string(e) +
                     " outside ground set of size " +
                     std::to_string(universe_));
  }
  words_[e >> 6] |= std::uint64_t{1} << (e & 63);
}

void ElementSet::erase(Element e) {
  if (e < 0 || e >= universe_) {
    throw InputError("element " + std::to_string(e) +
                     " outside ground set of size " +
                     std::to_string(universe_));
  }
  words_[e >> 6] &= ~(std::uint64_t{1} << (e & 63));
}

std::uint64_t ElementSet::mask() const {
  if (universe_ > 64) throw InputError("mask() requires universe <= 64");
  return words_[0];
}

std::vector<Element> ElementSet::elements() const {
  std::vector<Element> out;
  out.reserve(size());
  for_each([&](Element e) { out.push_back(e); });
  return out;
}

void ElementSet::check_same_universe(const ElementSet& o) const {
  if (o.universe_ != universe_) {
    throw InputError("element sets over different ground sets (" +
                     std::to_string(universe_) + " vs " +
                     std::to_string(o.universe_) + ")");
  }
}

bool ElementSet::is_subset_of(const ElementSet& other) const {
  check_same_universe(other);
  for (int w = 0; w < kWords; ++w) {
    if ((words_[w] & ~other.words_[w]) != 0) return false;
  }
  return true;
}

bool ElementSet::intersects(const ElementSet& other) const {
  check_same_universe(other);
  for (int w = 0; w < kWords; ++w) {
    if ((words_[w] & other.words_[w]) != 0) return true;
  }
  return false;
}

ElementSet ElementSet::operator|(const ElementSet& o) const {
  check_same_universe(o);
  ElementSet s = *this;
  for (int w = 0; w < kWords; ++w) s.words_[w] |= o.words_[w];
  return s;
}

ElementSet ElementSet::operator&(const ElementSet& o) const {
  check_same_universe(o);
  ElementSet s = *this;
  for (int w = 0; w < kWords; ++w) s.words_[w] &= o.words_[w];
  return s;
}

ElementSet ElementSet::operator-(const ElementSet& o) const {
  check_same_universe(o);
  ElementSet s = *this;
  for (int w = 0; w < kWords; ++w) s.words_[w] &= ~o.words_[w];
  return s;
}

std::size_t ElementSet::hash() const {
  // FNV-1a over the words.
  std::uint64_t h = 1469598103934665603ull ^ static_cast<std::uint64_t>(universe_);
  for (std::uint64_t w : words_) {
    h ^= w;
    h *= 1099511628211ull;
    h ^= h >> 29;
  }
  return static_cast<std::size_t>(h);
}

std::string ElementSet::to_string() const {
  std::ostringstream os;
  os << '{';
  bool first = true;
  for_each([&](Element e) {
    if (!first) os << ',';
    os << e;
    first = false;
  });
  os << '}';
  return os.str();
}

}  // namespace ocrs
