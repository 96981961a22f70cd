// Copyright 2026 The isocut Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "isocut/errors.hpp"

namespace isocut {

// Subset of a dense universe {0, ..., n-1}, stored as a bitset. Universes of
// up to 64 elements occupy one word.
class ElementSubset {
 public:
  using Word = std::uint64_t;
  static constexpr std::size_t kWordBits = 64;

  ElementSubset() = default;
  explicit ElementSubset(std::size_t universe)
      : universe_(universe), words_((universe + kWordBits - 1) / kWordBits, 0) {}

  ElementSubset(std::size_t universe, std::initializer_list<std::size_t> members)
      : ElementSubset(universe) {
    for (std::size_t v : members) insert(v);
  }

  ElementSubset(std::size_t universe, std::span<const std::size_t> members)
      : ElementSubset(universe) {
    for (std::size_t v : members) insert(v);
  }

  static ElementSubset full(std::size_t universe) {
    ElementSubset s(universe);
    std::fill(s.words_.begin(), s.words_.end(), ~Word{0});
    s.trim();
    return s;
  }

  // Low `universe` bits of `mask`; requires universe <= 64.
  static ElementSubset from_mask(std::size_t universe, Word mask) {
    if (universe > kWordBits) {
      throw InvalidArgument("from_mask needs a universe of at most 64 elements");
    }
    ElementSubset s(universe);
    if (universe > 0) {
      s.words_[0] = mask;
      s.trim();
    }
    return s;
  }

  std::size_t universe_size() const noexcept { return universe_; }

  std::size_t size() const noexcept {
    std::size_t count = 0;
    for (Word w : words_) count += static_cast<std::size_t>(std::popcount(w));
    return count;
  }

  bool empty() const noexcept {
    return std::all_of(words_.begin(), words_.end(), [](Word w) { return w == 0; });
  }

  bool is_full() const noexcept { return size() == universe_; }

  bool contains(std::size_t v) const noexcept {
    return v < universe_ && ((words_[v / kWordBits] >> (v % kWordBits)) & 1U) != 0;
  }

  void insert(std::size_t v) {
    check_index(v);
    words_[v / kWordBits] |= Word{1} << (v % kWordBits);
  }

  void erase(std::size_t v) {
    check_index(v);
    words_[v / kWordBits] &= ~(Word{1} << (v % kWordBits));
  }

  // Mask of the low word; only meaningful when universe <= 64.
  Word low_word() const noexcept { return words_.empty() ? 0 : words_[0]; }

  template <typename Fn>
  void for_each(Fn&& fn) const {
    for (std::size_t wi = 0; wi < words_.size(); ++wi) {
      Word w = words_[wi];
      while (w != 0) {
        const int bit = std::countr_zero(w);
        fn(wi * kWordBits + static_cast<std::size_t>(bit));
        w &= w - 1;
      }
    }
  }

  std::vector<std::size_t> members() const {
    std::vector<std::size_t> out;
    out.reserve(size());
    for_each([&](std::size_t v) { out.push_back(v); });
    return out;
  }

  // Smallest member, or universe_size() when empty.
  std::size_t first() const noexcept {
    for (std::size_t wi = 0; wi < words_.size(); ++wi) {
      if (words_[wi] != 0) {
        return wi * kWordBits + static_cast<std::size_t>(std::countr_zero(words_[wi]));
      }
    }
    return universe_;
  }

  ElementSubset complement() const {
    ElementSubset out(universe_);
    for (std::size_t i = 0; i < words_.size(); ++i) out.words_[i] = ~words_[i];
    out.trim();
    return out;
  }

  ElementSubset& operator|=(const ElementSubset& o) {
    check_same(o);
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
    return *this;
  }
  ElementSubset& operator&=(const ElementSubset& o) {
    check_same(o);
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
    return *this;
  }
  // Set difference.
  ElementSubset& operator-=(const ElementSubset& o) {
    check_same(o);
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~o.words_[i];
    return *this;
  }

  friend ElementSubset operator|(ElementSubset a, const ElementSubset& b) { return a |= b; }
  friend ElementSubset operator&(ElementSubset a, const ElementSubset& b) { return a &= b; }
  friend ElementSubset operator-(ElementSubset a, const ElementSubset& b) { return a -= b; }

  bool is_subset_of(const ElementSubset& o) const {
    check_same(o);
    for (std::size_t i = 0; i < words_.size(); ++i) {
      if ((words_[i] & ~o.words_[i]) != 0) return false;
    }
    return true;
  }

  bool intersects(const ElementSubset& o) const {
    check_same(o);
    for (std::size_t i = 0; i < words_.size(); ++i) {
      if ((words_[i] & o.words_[i]) != 0) return true;
    }
    return false;
  }

  friend bool operator==(const ElementSubset&, const ElementSubset&) = default;

  // Lexicographic order on the sorted member lists, e.g. {0,2} < {1} and
  // {0} < {0,1}. Used as the deterministic final tie-break.
  friend bool lex_less(const ElementSubset& a, const ElementSubset& b) {
    a.check_same(b);
    const ElementSubset diff = (a - b) | (b - a);
    const std::size_t d = diff.first();
    if (d == a.universe_) return false;
    // Members below d are shared; whoever holds d is smaller iff the other
    // set still has a member after d.
    const bool a_holds = a.contains(d);
    const ElementSubset& other = a_holds ? b : a;
    bool other_has_later = false;
    other.for_each([&](std::size_t v) { other_has_later = other_has_later || v > d; });
    return a_holds ? other_has_later : !other_has_later;
  }

  std::string to_string(std::size_t offset = 0) const {
    std::string out = "{";
    bool first_member = true;
    for_each([&](std::size_t v) {
      if (!first_member) out += ',';
      out += std::to_string(v + offset);
      first_member = false;
    });
    return out + "}";
  }

  std::size_t hash() const noexcept {
    std::size_t h = std::hash<std::size_t>{}(universe_);
    for (Word w : words_) h = h * 1000003U ^ std::hash<Word>{}(w);
    return h;
  }

 private:
  void check_index(std::size_t v) const {
    if (v >= universe_) {
      throw InvalidArgument("element " + std::to_string(v) + " outside universe of size " +
                            std::to_string(universe_));
    }
  }

  void check_same(const ElementSubset& o) const {
    if (o.universe_ != universe_) {
      throw InvalidArgument("subsets over different universes (" + std::to_string(universe_) +
                            " vs " + std::to_string(o.universe_) + ")");
    }
  }

  void trim() noexcept {
    const std::size_t rem = universe_ % kWordBits;
    if (rem != 0 && !words_.empty()) words_.back() &= (Word{1} << rem) - 1;
  }

  std::size_t universe_ = 0;
  std::vector<Word> words_;
};

struct ElementSubsetHash {
  std::size_t operator()(const ElementSubset& s) const noexcept { return s.hash(); }
};

// The indexed universe V. Labels are for display only.
class GroundSet {
 public:
  explicit GroundSet(std::size_t n, std::vector<std::string> labels = {})
      : n_(n), labels_(std::move(labels)) {
    if (n_ == 0) throw InvalidArgument("ground set must have at least one element");
    if (!labels_.empty() && labels_.size() != n_) {
      throw InvalidArgument("label count does not match ground set size");
    }
  }

  std::size_t size() const noexcept { return n_; }

  std::string label(std::size_t v) const {
    return labels_.empty() ? std::to_string(v) : labels_.at(v);
  }

  ElementSubset empty_set() const { return ElementSubset(n_); }
  ElementSubset full_set() const { return ElementSubset::full(n_); }

 private:
  std::size_t n_;
  std::vector<std::string> labels_;
};

}  // namespace isocut
