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

#include <concepts>
#include <cstddef>
#include <cstdint>
#include <string>

#include "isocut/errors.hpp"
#include "isocut/oracle.hpp"
#include "isocut/subset.hpp"

namespace isocut {

// Output of one call to a submodular-minimization blackbox.
struct SfmResult {
  // Unique inclusion-wise minimal minimizer.
  ElementSubset minimizer;
  Value value = 0;
  std::uint64_t blackbox_calls_charged = 1;
  std::uint64_t oracle_queries_used = 0;
  // Size of the instance the call worked on: ground-set size for the
  // brute-force path, representation size p for the flow path.
  std::size_t instance_size = 0;
};

inline constexpr std::size_t kBruteForceCap = 24;

// Exhaustive minimization over all subsets of f's ground set, including the
// empty and the full set. Minimizers of a submodular function are closed
// under intersection, so the intersection of every tie is itself a
// minimizer; it is re-evaluated to confirm that.
inline SfmResult sfm_bruteforce(const SubmodularOracle& f, std::size_t cap = kBruteForceCap) {
  const std::size_t n = f.ground_size();
  if (n > cap || n >= 64) {
    throw SizeLimitError("brute-force SFM supports ground sets up to " + std::to_string(cap) +
                         " elements, got " + std::to_string(n));
  }
  const std::uint64_t before = f.query_count();
  const std::uint64_t count = std::uint64_t{1} << n;
  Value best = f.evaluate(f.empty_set());
  std::uint64_t meet = 0;
  for (std::uint64_t mask = 1; mask < count; ++mask) {
    const Value v = f.evaluate(ElementSubset::from_mask(n, mask));
    if (v < best) {
      best = v;
      meet = mask;
    } else if (v == best) {
      meet &= mask;
    }
  }
  ElementSubset minimizer = ElementSubset::from_mask(n, meet);
  const Value check = f.evaluate(minimizer);
  if (check != best) {
    throw ContractViolation("intersection of minimizers " + minimizer.to_string() +
                            " has value " + std::to_string(check) + " > minimum " +
                            std::to_string(best) + "; oracle is not submodular");
  }
  SfmResult r;
  r.minimizer = std::move(minimizer);
  r.value = best;
  r.oracle_queries_used = f.query_count() - before;
  r.instance_size = n;
  return r;
}

// An SFM blackbox minimizes f_{S,T}(A) = f(S ∪ A) over A ⊆ V \ (S ∪ T) and
// reports the minimal minimizer A in the coordinates of V (S not included).
template <typename B>
concept SfmBlackbox = requires(B& bb, const SubmodularOracle& f, const ElementSubset& s) {
  { bb.minimize(f, s, s) } -> std::same_as<SfmResult>;
};

// Blackboxes that can exploit the structure of an isolating-set cell: the
// call minimizes f_{{v}, V \ cell} and may build a smaller instance for it.
template <typename B>
concept CellAwareBlackbox =
    SfmBlackbox<B> &&
    requires(B& bb, const SubmodularOracle& f, std::size_t v, const ElementSubset& cell) {
      { bb.minimize_in_cell(f, v, cell) } -> std::same_as<SfmResult>;
    };

// Works with any oracle; limited to contracted ground sets of `cap` elements.
class BruteForceBlackbox {
 public:
  explicit BruteForceBlackbox(std::size_t cap = kBruteForceCap) : cap_(cap) {}

  SfmResult minimize(const SubmodularOracle& f, const ElementSubset& forced_in,
                     const ElementSubset& forced_out) const {
    const ContractedOracle g(f, forced_in, forced_out);
    SfmResult r = sfm_bruteforce(g, cap_);
    r.minimizer = g.lift(r.minimizer);
    return r;
  }

 private:
  std::size_t cap_;
};

// Exhaustive search for the minimum of f over ∅ ⊊ S ⊊ V. Returns the
// minimum value and the first minimizing mask in increasing order.
struct NontrivialMinimum {
  Value value = 0;
  ElementSubset set;
};

inline NontrivialMinimum brute_force_nontrivial_minimum(const SubmodularOracle& f,
                                                        std::size_t cap = kBruteForceCap) {
  const std::size_t n = f.ground_size();
  if (n < 2) throw InvalidArgument("a nontrivial split needs at least two elements");
  if (n > cap || n >= 64) {
    throw SizeLimitError("brute-force nontrivial minimum supports up to " +
                         std::to_string(cap) + " elements, got " + std::to_string(n));
  }
  // Fixing the top element outside S enumerates each split once when f is
  // symmetric; enumerate everything otherwise.
  const std::uint64_t count = std::uint64_t{1} << (f.symmetric() ? n - 1 : n);
  const std::uint64_t full = (std::uint64_t{1} << n) - 1;
  NontrivialMinimum best{0, ElementSubset(n)};
  bool have = false;
  for (std::uint64_t mask = 1; mask < count; ++mask) {
    if (mask == full) continue;
    ElementSubset s = ElementSubset::from_mask(n, mask);
    const Value v = f.evaluate(s);
    if (!have || v < best.value) {
      best = {v, std::move(s)};
      have = true;
    }
  }
  return best;
}

}  // namespace isocut
