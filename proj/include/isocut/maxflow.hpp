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
#include <cstddef>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "isocut/errors.hpp"
#include "isocut/subset.hpp"

namespace isocut {

using Capacity = std::int64_t;

// Uncuttable arc. Residual capacity of an infinite arc stays infinite.
inline constexpr Capacity kInfiniteCapacity = std::numeric_limits<Capacity>::max();

struct Arc {
  std::size_t from = 0;
  std::size_t to = 0;
  Capacity capacity = 0;

  bool infinite() const noexcept { return capacity == kInfiniteCapacity; }
};

class FlowNetwork {
 public:
  FlowNetwork(std::size_t node_count, std::size_t source, std::size_t sink)
      : node_count_(node_count), source_(source), sink_(sink) {
    if (source >= node_count || sink >= node_count) {
      throw InvalidArgument("source or sink outside the network");
    }
    if (source == sink) throw InvalidArgument("source and sink must differ");
  }

  std::size_t add_arc(std::size_t from, std::size_t to, Capacity capacity) {
    if (from >= node_count_ || to >= node_count_) {
      throw InvalidArgument("arc endpoint outside the network");
    }
    if (capacity < 0) throw InvalidArgument("negative arc capacity");
    arcs_.push_back({from, to, capacity});
    return arcs_.size() - 1;
  }

  std::size_t node_count() const noexcept { return node_count_; }
  std::size_t source() const noexcept { return source_; }
  std::size_t sink() const noexcept { return sink_; }
  const std::vector<Arc>& arcs() const noexcept { return arcs_; }

 private:
  std::size_t node_count_;
  std::size_t source_;
  std::size_t sink_;
  std::vector<Arc> arcs_;
};

struct CutResult {
  Capacity flow_value = 0;
  // Nodes reachable from the source in the final residual network: the
  // unique minimal source side of a minimum cut.
  ElementSubset source_side;
  // Arcs leaving source_side, in input order. All are saturated and finite.
  std::vector<std::size_t> saturated_arcs;
  // Flow on each input arc.
  std::vector<Capacity> arc_flow;
};

namespace detail {

// Dinic's algorithm on a residual graph with paired forward/backward slots.
class Dinic {
 public:
  explicit Dinic(const FlowNetwork& net)
      : n_(net.node_count()), s_(net.source()), t_(net.sink()), head_(n_), level_(n_), it_(n_) {
    to_.reserve(2 * net.arcs().size());
    residual_.reserve(2 * net.arcs().size());
    for (const Arc& a : net.arcs()) {
      head_[a.from].push_back(to_.size());
      to_.push_back(a.to);
      residual_.push_back(a.capacity);
      head_[a.to].push_back(to_.size());
      to_.push_back(a.from);
      residual_.push_back(0);
    }
  }

  Capacity run() {
    Capacity total = 0;
    while (build_levels()) {
      std::fill(it_.begin(), it_.end(), 0);
      for (;;) {
        const Capacity pushed = augment(s_, kInfiniteCapacity);
        if (pushed == 0) break;
        total += pushed;
      }
    }
    return total;
  }

  ElementSubset reachable() const {
    ElementSubset seen(n_);
    std::vector<std::size_t> stack{s_};
    seen.insert(s_);
    while (!stack.empty()) {
      const std::size_t u = stack.back();
      stack.pop_back();
      for (std::size_t e : head_[u]) {
        if (residual_[e] > 0 && !seen.contains(to_[e])) {
          seen.insert(to_[e]);
          stack.push_back(to_[e]);
        }
      }
    }
    return seen;
  }

  // Flow on input arc i equals the residual of its backward slot.
  Capacity flow_on(std::size_t arc) const { return residual_[2 * arc + 1]; }

 private:
  bool build_levels() {
    std::fill(level_.begin(), level_.end(), -1);
    std::vector<std::size_t> queue{s_};
    level_[s_] = 0;
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
      const std::size_t u = queue[qi];
      for (std::size_t e : head_[u]) {
        if (residual_[e] > 0 && level_[to_[e]] < 0) {
          level_[to_[e]] = level_[u] + 1;
          queue.push_back(to_[e]);
        }
      }
    }
    return level_[t_] >= 0;
  }

  Capacity augment(std::size_t u, Capacity limit) {
    if (u == t_) return limit;
    for (std::size_t& i = it_[u]; i < head_[u].size(); ++i) {
      const std::size_t e = head_[u][i];
      const std::size_t v = to_[e];
      if (residual_[e] <= 0 || level_[v] != level_[u] + 1) continue;
      const Capacity got = augment(v, std::min(limit, residual_[e]));
      if (got > 0) {
        if (residual_[e] != kInfiniteCapacity) residual_[e] -= got;
        if (residual_[e ^ 1U] != kInfiniteCapacity) residual_[e ^ 1U] += got;
        return got;
      }
    }
    return 0;
  }

  std::size_t n_;
  std::size_t s_;
  std::size_t t_;
  std::vector<std::vector<std::size_t>> head_;
  std::vector<std::size_t> to_;
  std::vector<Capacity> residual_;
  std::vector<int> level_;
  std::vector<std::size_t> it_;
};

inline void validate_network(const FlowNetwork& net) {
  Capacity finite_total = 0;
  for (const Arc& a : net.arcs()) {
    if (a.infinite()) continue;
    if (__builtin_add_overflow(finite_total, a.capacity, &finite_total)) {
      throw InvalidArgument("sum of finite capacities overflows 64 bits");
    }
  }
  // A path of infinite arcs would make the flow unbounded.
  std::vector<std::vector<std::size_t>> inf_out(net.node_count());
  for (const Arc& a : net.arcs()) {
    if (a.infinite()) inf_out[a.from].push_back(a.to);
  }
  std::vector<char> seen(net.node_count(), 0);
  std::vector<std::size_t> stack{net.source()};
  seen[net.source()] = 1;
  while (!stack.empty()) {
    const std::size_t u = stack.back();
    stack.pop_back();
    if (u == net.sink()) throw InvalidArgument("source reaches sink through infinite arcs");
    for (std::size_t v : inf_out[u]) {
      if (!seen[v]) {
        seen[v] = 1;
        stack.push_back(v);
      }
    }
  }
}

}  // namespace detail

// Exact maximum flow and the minimal minimum cut. Arcs are scanned in input
// order, so the result is reproducible for a fixed network.
inline CutResult max_flow(const FlowNetwork& net) {
  detail::validate_network(net);
  detail::Dinic dinic(net);
  CutResult out;
  out.flow_value = dinic.run();
  out.source_side = dinic.reachable();
  out.arc_flow.reserve(net.arcs().size());
  for (std::size_t i = 0; i < net.arcs().size(); ++i) {
    out.arc_flow.push_back(dinic.flow_on(i));
    const Arc& a = net.arcs()[i];
    if (out.source_side.contains(a.from) && !out.source_side.contains(a.to)) {
      if (a.infinite()) throw ContractViolation("infinite arc crosses the minimum cut");
      out.saturated_arcs.push_back(i);
    }
  }
  return out;
}

}  // namespace isocut
