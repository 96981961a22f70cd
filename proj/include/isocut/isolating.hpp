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
#include <exception>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "isocut/errors.hpp"
#include "isocut/oracle.hpp"
#include "isocut/sfm.hpp"
#include "isocut/subset.hpp"

namespace isocut {

// Terminals R with binary labels: the i-th smallest terminal gets label i.
class TerminalSet {
 public:
  explicit TerminalSet(ElementSubset members)
      : members_(std::move(members)), order_(members_.members()) {
    if (order_.size() < 2) {
      throw InvalidArgument("isolating sets need at least two terminals, got " +
                            std::to_string(order_.size()));
    }
  }

  const ElementSubset& members() const noexcept { return members_; }
  std::size_t size() const noexcept { return order_.size(); }
  std::size_t universe_size() const noexcept { return members_.universe_size(); }

  // Terminal carrying label `label`.
  std::size_t terminal(std::size_t label) const { return order_.at(label); }
  const std::vector<std::size_t>& terminals() const noexcept { return order_; }

  // Number of label bits, ceil(log2 |R|).
  std::size_t label_bits() const noexcept {
    return static_cast<std::size_t>(std::bit_width(order_.size() - 1));
  }

 private:
  ElementSubset members_;
  std::vector<std::size_t> order_;
};

struct Bipartition {
  ElementSubset sources;  // terminals whose label has bit i == 0
  ElementSubset sinks;
};

// One split of R per label bit; any two terminals are separated by some split.
inline std::vector<Bipartition> bipartitions(const TerminalSet& terminals) {
  const std::size_t n = terminals.universe_size();
  std::vector<Bipartition> out;
  out.reserve(terminals.label_bits());
  for (std::size_t bit = 0; bit < terminals.label_bits(); ++bit) {
    Bipartition p{ElementSubset(n), ElementSubset(n)};
    for (std::size_t label = 0; label < terminals.size(); ++label) {
      ((label >> bit) & 1U ? p.sinks : p.sources).insert(terminals.terminal(label));
    }
    out.push_back(std::move(p));
  }
  return out;
}

struct IsolatingStats {
  std::size_t step1_calls = 0;
  std::size_t step2_calls = 0;
  // Σ_v |U_v \ {v}|: total ground-set size of the Step-2 calls.
  std::size_t step2_ground_total = 0;
  // Σ_v instance_size reported by the Step-2 calls.
  std::size_t step2_instance_size = 0;
  std::uint64_t oracle_queries = 0;
};

struct IsolatedTerminal {
  std::size_t terminal = 0;
  ElementSubset cell;            // U_v
  ElementSubset isolating_set;   // S_v
  Value value = 0;               // f(S_v)
};

struct IsolatingResult {
  std::vector<IsolatedTerminal> terminals;  // in label order
  std::vector<Bipartition> splits;
  // S_i ∪ A_i: the side of the i-th Step-1 bipartition of V holding S_i.
  std::vector<ElementSubset> step1_sides;
  IsolatingStats stats;

  const IsolatedTerminal& at(std::size_t v) const {
    for (const auto& t : terminals) {
      if (t.terminal == v) return t;
    }
    throw InvalidArgument("element " + std::to_string(v) + " is not a terminal");
  }
};

struct IsolatingOptions {
  // Worker threads for the independent Step-2 calls. The blackbox and the
  // oracle must be safe for concurrent use when this exceeds 1.
  std::size_t threads = 1;
};

namespace detail {

template <SfmBlackbox B>
SfmResult minimize_cell(B& blackbox, const SubmodularOracle& f, std::size_t v,
                        const ElementSubset& cell) {
  if constexpr (CellAwareBlackbox<B>) {
    return blackbox.minimize_in_cell(f, v, cell);
  } else {
    ElementSubset source(f.ground_size(), {v});
    return blackbox.minimize(f, source, cell.complement());
  }
}

}  // namespace detail

// Minimum isolating sets of a symmetric submodular f with respect to R.
//
// Step 1 minimizes f_{S_i, T_i} for each label bit i, giving bipartitions of
// V; U_v is the intersection over i of the side containing v. Step 2
// minimizes f_{{v}, V \ U_v} for each terminal. The cells U_v are pairwise
// disjoint, so Step 2 touches at most |V| elements in total.
template <SfmBlackbox B>
IsolatingResult isolating_sets(const SubmodularOracle& f, const TerminalSet& terminals,
                               B& blackbox, const IsolatingOptions& options = {}) {
  const std::size_t n = f.ground_size();
  if (terminals.universe_size() != n) {
    throw InvalidArgument("terminal set is over a different ground set");
  }
  if (!f.symmetric()) {
    throw ContractViolation("isolating sets require a symmetric oracle");
  }
  const std::uint64_t queries_before = f.query_count();

  IsolatingResult result;
  result.splits = bipartitions(terminals);

  std::vector<ElementSubset> cells(terminals.size(), ElementSubset::full(n));
  for (const Bipartition& split : result.splits) {
    const SfmResult r = blackbox.minimize(f, split.sources, split.sinks);
    ++result.stats.step1_calls;
    ElementSubset side = split.sources | r.minimizer;
    const ElementSubset other = side.complement();
    for (std::size_t label = 0; label < terminals.size(); ++label) {
      cells[label] &= side.contains(terminals.terminal(label)) ? side : other;
    }
    result.step1_sides.push_back(std::move(side));
  }

  std::vector<SfmResult> step2(terminals.size());
  std::vector<std::exception_ptr> errors(terminals.size());
  auto solve = [&](std::size_t label) {
    try {
      step2[label] = detail::minimize_cell(blackbox, f, terminals.terminal(label), cells[label]);
    } catch (...) {
      errors[label] = std::current_exception();
    }
  };
  const std::size_t workers = std::min(options.threads, terminals.size());
  if (workers <= 1) {
    for (std::size_t label = 0; label < terminals.size(); ++label) solve(label);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t label = w; label < terminals.size(); label += workers) solve(label);
      });
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  result.terminals.reserve(terminals.size());
  for (std::size_t label = 0; label < terminals.size(); ++label) {
    const std::size_t v = terminals.terminal(label);
    IsolatedTerminal t{v, std::move(cells[label]), std::move(step2[label].minimizer),
                       step2[label].value};
    t.isolating_set.insert(v);
    ++result.stats.step2_calls;
    result.stats.step2_ground_total += t.cell.size() - 1;
    result.stats.step2_instance_size += step2[label].instance_size;
    result.terminals.push_back(std::move(t));
  }
  result.stats.oracle_queries = f.query_count() - queries_before;
  return result;
}

}  // namespace isocut
