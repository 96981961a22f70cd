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
#include <numeric>
#include <string>
#include <vector>

#include "isocut/driver.hpp"
#include "isocut/errors.hpp"
#include "isocut/hypergraph.hpp"
#include "isocut/maxflow.hpp"
#include "isocut/oracle.hpp"
#include "isocut/sfm.hpp"
#include "isocut/subset.hpp"

namespace isocut {

struct StCut {
  Value value = 0;
  ElementSubset source_side;  // minimal, over the hypergraph's vertices
  std::size_t network_nodes = 0;
  std::size_t network_arcs = 0;
};

// Split-vertex flow network: every hyperedge e becomes e_in -> e_out with
// capacity w(e), joined to its vertices by infinite arcs v -> e_in and
// e_out -> v. A super-source and super-sink attach to `sources` and `sinks`
// with infinite arcs. Hyperedges of rank 1 are never cut and are skipped.
inline FlowNetwork split_vertex_network(const Hypergraph& h, const ElementSubset& sources,
                                        const ElementSubset& sinks) {
  const std::size_t n = h.vertex_count();
  if (sources.universe_size() != n || sinks.universe_size() != n) {
    throw InvalidArgument("terminal sides are over a different vertex set");
  }
  if (sources.empty() || sinks.empty()) throw InvalidArgument("s-t cut needs nonempty sides");
  if (sources.intersects(sinks)) {
    throw InvalidArgument("sources and sinks overlap: " + (sources & sinks).to_string());
  }
  const std::size_t m = h.edge_count();
  const std::size_t s = n + 2 * m;
  const std::size_t t = s + 1;
  FlowNetwork net(t + 1, s, t);
  for (std::size_t i = 0; i < m; ++i) {
    const Hyperedge& e = h.edges()[i];
    if (e.vertices.size() < 2) continue;
    const std::size_t in = n + 2 * i;
    const std::size_t out = in + 1;
    net.add_arc(in, out, e.weight);
    for (std::size_t v : e.vertices) {
      net.add_arc(v, in, kInfiniteCapacity);
      net.add_arc(out, v, kInfiniteCapacity);
    }
  }
  sources.for_each([&](std::size_t v) { net.add_arc(s, v, kInfiniteCapacity); });
  sinks.for_each([&](std::size_t v) { net.add_arc(v, t, kInfiniteCapacity); });
  return net;
}

// Minimum cut separating `sources` from `sinks`, with the minimal source side.
inline StCut st_mincut(const Hypergraph& h, const ElementSubset& sources,
                       const ElementSubset& sinks) {
  const FlowNetwork net = split_vertex_network(h, sources, sinks);
  const CutResult cut = max_flow(net);
  StCut out;
  out.value = cut.flow_value;
  out.source_side = ElementSubset(h.vertex_count());
  for (std::size_t v = 0; v < h.vertex_count(); ++v) {
    if (cut.source_side.contains(v)) out.source_side.insert(v);
  }
  out.network_nodes = net.node_count();
  out.network_arcs = net.arcs().size();
  return out;
}

// Instance for one Step-2 cell: the vertices of the cell plus one sink vertex
// t standing for everything outside it.
struct ContractedInstance {
  Hypergraph graph;
  std::size_t source = 0;                  // local id of v
  std::size_t sink = 0;                    // local id of t
  std::vector<std::size_t> original;       // local id -> original vertex (cell only)
};

// Maps e to (e ∩ U) ∪ {t if e ⊄ U}; images with fewer than two vertices are
// dropped and equal images merge.
inline ContractedInstance contracted_instance(const Hypergraph& h, std::size_t v,
                                              const ElementSubset& cell) {
  if (cell.universe_size() != h.vertex_count()) {
    throw InvalidArgument("cell is over a different vertex set");
  }
  if (!cell.contains(v)) {
    throw InvalidArgument("vertex " + std::to_string(v) + " is not in its cell");
  }
  if (cell.is_full()) throw InvalidArgument("cell covers every vertex; nothing to contract");

  std::vector<std::size_t> original = cell.members();
  std::vector<std::size_t> local(h.vertex_count(), original.size());
  for (std::size_t i = 0; i < original.size(); ++i) local[original[i]] = i;
  const std::size_t t = original.size();

  std::vector<Hyperedge> edges;
  for (const Hyperedge& e : h.edges()) {
    Hyperedge image;
    image.weight = e.weight;
    bool outside = false;
    for (std::size_t u : e.vertices) {
      if (local[u] == t) {
        outside = true;
      } else {
        image.vertices.push_back(local[u]);
      }
    }
    if (outside) image.vertices.push_back(t);
    if (image.vertices.size() >= 2) edges.push_back(std::move(image));
  }
  return {Hypergraph(t + 1, std::move(edges)), local[v], t, std::move(original)};
}

// SFM on the cut function contracted by (forced_in, forced_out), via one
// s-t max flow. The minimizer excludes forced_in, as for every blackbox.
inline SfmResult sfm_cutfunction(const Hypergraph& h, const ElementSubset& forced_in,
                                 const ElementSubset& forced_out) {
  if (forced_in.empty() || forced_out.empty()) {
    throw InvalidArgument("flow-based SFM needs nonempty forced_in and forced_out");
  }
  const StCut cut = st_mincut(h, forced_in, forced_out);
  SfmResult r;
  r.minimizer = cut.source_side - forced_in;
  r.value = cut.value;
  r.instance_size = h.representation_size();
  return r;
}

// Blackbox for cut-function oracles. Step-1 calls run on the whole
// hypergraph; Step-2 calls run on the contracted instance of their cell.
// Counters are atomic so one blackbox can serve concurrent calls.
class CutFunctionBlackbox {
 public:
  explicit CutFunctionBlackbox(const Hypergraph& h) : h_(h) {}

  SfmResult minimize(const SubmodularOracle& f, const ElementSubset& forced_in,
                     const ElementSubset& forced_out) {
    check_oracle(f);
    SfmResult r = sfm_cutfunction(h_, forced_in, forced_out);
    flow_calls_.fetch_add(1, std::memory_order_relaxed);
    return r;
  }

  SfmResult minimize_in_cell(const SubmodularOracle& f, std::size_t v,
                             const ElementSubset& cell) {
    check_oracle(f);
    const ContractedInstance inst = contracted_instance(h_, v, cell);
    const std::size_t k = inst.graph.vertex_count();
    const StCut cut =
        st_mincut(inst.graph, ElementSubset(k, {inst.source}), ElementSubset(k, {inst.sink}));
    flow_calls_.fetch_add(1, std::memory_order_relaxed);
    contracted_size_.fetch_add(inst.graph.representation_size(), std::memory_order_relaxed);

    SfmResult r;
    r.minimizer = ElementSubset(h_.vertex_count());
    cut.source_side.for_each([&](std::size_t i) {
      if (i != inst.source) r.minimizer.insert(inst.original[i]);
    });
    r.value = cut.value;
    r.instance_size = inst.graph.representation_size();
    return r;
  }

  std::uint64_t flow_calls() const noexcept { return flow_calls_.load(); }
  std::uint64_t contracted_size_total() const noexcept { return contracted_size_.load(); }

 private:
  void check_oracle(const SubmodularOracle& f) const {
    if (f.ground_size() != h_.vertex_count()) {
      throw InvalidArgument("oracle does not match the blackbox's hypergraph");
    }
  }

  const Hypergraph& h_;
  std::atomic<std::uint64_t> flow_calls_{0};
  std::atomic<std::uint64_t> contracted_size_{0};
};

// Connected components of h (through hyperedges), as vertex sets ordered by
// their smallest vertex.
inline std::vector<ElementSubset> connected_components(const Hypergraph& h) {
  const std::size_t n = h.vertex_count();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const Hyperedge& e : h.edges()) {
    for (std::size_t i = 1; i < e.vertices.size(); ++i) {
      const std::size_t a = find(e.vertices[0]);
      const std::size_t b = find(e.vertices[i]);
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
  }
  std::vector<ElementSubset> comps;
  std::vector<std::size_t> slot(n, n);
  for (std::size_t v = 0; v < n; ++v) {
    const std::size_t r = find(v);
    if (slot[r] == n) {
      slot[r] = comps.size();
      comps.emplace_back(n);
    }
    comps[slot[r]].insert(v);
  }
  return comps;
}

struct HypergraphMincutResult {
  Value min_cut_value = 0;
  ElementSubset side;
  bool disconnected = false;
  MinimizerResult driver;  // empty when the disconnected shortcut was taken
  std::uint64_t flow_calls = 0;
  std::uint64_t contracted_size_total = 0;
  // Step-2 instances whose summed size exceeded 4 (p + |R|).
  std::size_t step2_size_violations = 0;
  double max_step2_size_ratio = 0.0;  // max over trials of Σp_v / (p + |R|)
};

inline constexpr std::size_t kStep2SizeFactor = 4;

// Global minimum cut of h through the randomized driver with flow-based
// blackbox calls. Disconnected inputs return 0 and their smallest component.
inline HypergraphMincutResult hypergraph_mincut(const Hypergraph& h, const DriverConfig& cfg) {
  if (h.vertex_count() < 2) throw InvalidArgument("minimum cut needs at least two vertices");
  HypergraphMincutResult out;
  const auto comps = connected_components(h);
  if (comps.size() > 1) {
    const ElementSubset* smallest = &comps.front();
    for (const auto& c : comps) {
      if (c.size() < smallest->size()) smallest = &c;
    }
    out.disconnected = true;
    out.min_cut_value = 0;
    out.side = *smallest;
    return out;
  }

  const CutOracle oracle(h);
  CutFunctionBlackbox blackbox(h);
  out.driver = find_nontrivial_minimizer(oracle, cfg, blackbox);
  out.min_cut_value = out.driver.best_value;
  out.side = out.driver.best_set;
  out.flow_calls = blackbox.flow_calls();
  out.contracted_size_total = blackbox.contracted_size_total();
  const std::size_t p = h.representation_size();
  for (const TrialRecord& t : out.driver.trials) {
    if (t.skipped) continue;
    const std::size_t bound = kStep2SizeFactor * (p + t.terminals);
    if (t.step2_instance_size > bound) ++out.step2_size_violations;
    out.max_step2_size_ratio =
        std::max(out.max_step2_size_ratio, static_cast<double>(t.step2_instance_size) /
                                               static_cast<double>(p + t.terminals));
  }
  return out;
}

}  // namespace isocut
