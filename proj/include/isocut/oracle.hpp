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

#include <atomic>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "isocut/errors.hpp"
#include "isocut/subset.hpp"

namespace isocut {

// Oracle values are exact integers.
using Value = std::int64_t;

inline Value checked_add(Value a, Value b) {
  Value out = 0;
  if (__builtin_add_overflow(a, b, &out)) {
    throw InvalidArgument("integer overflow while summing oracle values");
  }
  return out;
}

// Evaluation interface f: 2^V -> Value. Each evaluate() call bumps an atomic
// query counter, so oracles can be evaluated concurrently from several
// threads. Derived classes supply value_of().
class SubmodularOracle {
 public:
  SubmodularOracle(std::size_t ground_size, bool symmetric,
                   std::optional<Value> max_abs_value_hint = std::nullopt)
      : ground_size_(ground_size), symmetric_(symmetric), hint_(max_abs_value_hint) {}

  virtual ~SubmodularOracle() = default;

  SubmodularOracle(const SubmodularOracle&) = delete;
  SubmodularOracle& operator=(const SubmodularOracle&) = delete;

  std::size_t ground_size() const noexcept { return ground_size_; }
  bool symmetric() const noexcept { return symmetric_; }
  std::optional<Value> max_abs_value_hint() const noexcept { return hint_; }

  Value evaluate(const ElementSubset& s) const {
    if (s.universe_size() != ground_size_) {
      throw InvalidArgument("subset universe " + std::to_string(s.universe_size()) +
                            " does not match oracle ground set " +
                            std::to_string(ground_size_));
    }
    queries_.fetch_add(1, std::memory_order_relaxed);
    return value_of(s);
  }

  std::uint64_t query_count() const noexcept {
    return queries_.load(std::memory_order_relaxed);
  }

  ElementSubset empty_set() const { return ElementSubset(ground_size_); }
  ElementSubset full_set() const { return ElementSubset::full(ground_size_); }

 protected:
  virtual Value value_of(const ElementSubset& s) const = 0;

 private:
  std::size_t ground_size_;
  bool symmetric_;
  std::optional<Value> hint_;
  mutable std::atomic<std::uint64_t> queries_{0};
};

// Oracle backed by a callable. The callable must be deterministic and safe to
// call concurrently.
class FunctionOracle final : public SubmodularOracle {
 public:
  using Fn = std::function<Value(const ElementSubset&)>;

  FunctionOracle(const GroundSet& ground, Fn fn, bool symmetric,
                 std::optional<Value> max_abs_value_hint = std::nullopt)
      : SubmodularOracle(ground.size(), symmetric, max_abs_value_hint), fn_(std::move(fn)) {}

 protected:
  Value value_of(const ElementSubset& s) const override { return fn_(s); }

 private:
  Fn fn_;
};

// f_{S,T}(A) = f(S ∪ A) on the ground set V \ (S ∪ T). Local element i stands
// for the i-th smallest element of V \ (S ∪ T). Holds a reference to the base
// oracle, which must outlive it. Each evaluation forwards exactly one query.
class ContractedOracle final : public SubmodularOracle {
 public:
  ContractedOracle(const SubmodularOracle& base, ElementSubset forced_in,
                   ElementSubset forced_out)
      : SubmodularOracle(free_count(base, forced_in, forced_out),
                         base.symmetric() && forced_in.empty() && forced_out.empty(),
                         base.max_abs_value_hint()),
        base_(base),
        forced_in_(std::move(forced_in)),
        forced_out_(std::move(forced_out)),
        free_((forced_in_ | forced_out_).complement().members()) {}

  const SubmodularOracle& base() const noexcept { return base_; }
  const ElementSubset& forced_in() const noexcept { return forced_in_; }
  const ElementSubset& forced_out() const noexcept { return forced_out_; }

  // Base element represented by local element i.
  std::size_t base_element(std::size_t i) const { return free_.at(i); }

  // Local subset -> the same elements in base coordinates (without forced_in).
  ElementSubset lift(const ElementSubset& local) const {
    ElementSubset out(base_.ground_size());
    local.for_each([&](std::size_t i) { out.insert(free_[i]); });
    return out;
  }

  // Base subset -> local coordinates. Elements of S or T are dropped.
  ElementSubset project(const ElementSubset& in_base) const {
    ElementSubset out(ground_size());
    for (std::size_t i = 0; i < free_.size(); ++i) {
      if (in_base.contains(free_[i])) out.insert(i);
    }
    return out;
  }

 protected:
  Value value_of(const ElementSubset& local) const override {
    return base_.evaluate(forced_in_ | lift(local));
  }

 private:
  static std::size_t free_count(const SubmodularOracle& base, const ElementSubset& in,
                                const ElementSubset& out) {
    if (in.universe_size() != base.ground_size() || out.universe_size() != base.ground_size()) {
      throw InvalidArgument("contraction sides must be subsets of the oracle's ground set");
    }
    if (in.intersects(out)) {
      throw InvalidArgument("contraction sides overlap: " + (in & out).to_string());
    }
    return base.ground_size() - (in | out).size();
  }

  const SubmodularOracle& base_;
  ElementSubset forced_in_;
  ElementSubset forced_out_;
  std::vector<std::size_t> free_;
};

inline ContractedOracle contract(const SubmodularOracle& f, ElementSubset forced_in,
                                 ElementSubset forced_out) {
  return ContractedOracle(f, std::move(forced_in), std::move(forced_out));
}

enum class CheckMode { exhaustive, sampled };

struct SubmodularityViolation {
  ElementSubset a;
  ElementSubset b;
  Value f_a = 0;
  Value f_b = 0;
  Value f_union = 0;
  Value f_intersection = 0;
};

struct SymmetryViolation {
  ElementSubset set;
  Value f_set = 0;
  Value f_complement = 0;
};

inline constexpr std::size_t kExhaustiveSubmodularCap = 16;
inline constexpr std::size_t kExhaustiveSymmetricCap = 20;

namespace detail {

inline ElementSubset random_subset(std::size_t n, std::mt19937_64& rng) {
  ElementSubset s(n);
  std::uint64_t bits = 0;
  for (std::size_t v = 0; v < n; ++v) {
    if (v % 64 == 0) bits = rng();
    if ((bits >> (v % 64)) & 1U) s.insert(v);
  }
  return s;
}

}  // namespace detail

// Searches for A, B with f(A) + f(B) < f(A ∪ B) + f(A ∩ B).
//
// Exhaustive mode tabulates f once and tests the equivalent local condition
// f(S+i) + f(S+j) >= f(S+i+j) + f(S) for every S and i, j outside S; a
// violation is reported as the pair (S+i, S+j). Sampled mode draws `trials`
// uniformly random pairs.
inline std::optional<SubmodularityViolation> check_submodular(const SubmodularOracle& f,
                                                              CheckMode mode,
                                                              std::size_t trials = 1000,
                                                              std::uint64_t seed = 1) {
  const std::size_t n = f.ground_size();
  if (mode == CheckMode::sampled) {
    std::mt19937_64 rng(seed);
    for (std::size_t t = 0; t < trials; ++t) {
      ElementSubset a = detail::random_subset(n, rng);
      ElementSubset b = detail::random_subset(n, rng);
      SubmodularityViolation v{a, b, f.evaluate(a), f.evaluate(b), f.evaluate(a | b),
                               f.evaluate(a & b)};
      if (checked_add(v.f_a, v.f_b) < checked_add(v.f_union, v.f_intersection)) return v;
    }
    return std::nullopt;
  }

  if (n > kExhaustiveSubmodularCap) {
    throw SizeLimitError("exhaustive submodularity check needs n <= 16, got " +
                         std::to_string(n));
  }
  const std::uint64_t count = std::uint64_t{1} << n;
  std::vector<Value> table(count);
  for (std::uint64_t mask = 0; mask < count; ++mask) {
    table[mask] = f.evaluate(ElementSubset::from_mask(n, mask));
  }
  for (std::uint64_t mask = 0; mask < count; ++mask) {
    for (std::size_t i = 0; i < n; ++i) {
      const std::uint64_t bi = std::uint64_t{1} << i;
      if (mask & bi) continue;
      for (std::size_t j = i + 1; j < n; ++j) {
        const std::uint64_t bj = std::uint64_t{1} << j;
        if (mask & bj) continue;
        const Value lhs = checked_add(table[mask | bi], table[mask | bj]);
        const Value rhs = checked_add(table[mask | bi | bj], table[mask]);
        if (lhs < rhs) {
          return SubmodularityViolation{ElementSubset::from_mask(n, mask | bi),
                                        ElementSubset::from_mask(n, mask | bj),
                                        table[mask | bi],
                                        table[mask | bj],
                                        table[mask | bi | bj],
                                        table[mask]};
        }
      }
    }
  }
  return std::nullopt;
}

// Searches for S with f(S) != f(V \ S).
inline std::optional<SymmetryViolation> check_symmetric(const SubmodularOracle& f,
                                                        CheckMode mode,
                                                        std::size_t trials = 1000,
                                                        std::uint64_t seed = 1) {
  const std::size_t n = f.ground_size();
  auto probe = [&](const ElementSubset& s) -> std::optional<SymmetryViolation> {
    const Value a = f.evaluate(s);
    const Value b = f.evaluate(s.complement());
    if (a != b) return SymmetryViolation{s, a, b};
    return std::nullopt;
  };

  if (mode == CheckMode::sampled) {
    std::mt19937_64 rng(seed);
    for (std::size_t t = 0; t < trials; ++t) {
      if (auto v = probe(detail::random_subset(n, rng))) return v;
    }
    return std::nullopt;
  }

  if (n > kExhaustiveSymmetricCap) {
    throw SizeLimitError("exhaustive symmetry check needs n <= 20, got " + std::to_string(n));
  }
  // Each complementary pair once: masks without the top element.
  const std::uint64_t half = n == 0 ? 1 : (std::uint64_t{1} << (n - 1));
  for (std::uint64_t mask = 0; mask < half; ++mask) {
    if (auto v = probe(ElementSubset::from_mask(n, mask))) return v;
  }
  return std::nullopt;
}

}  // namespace isocut
