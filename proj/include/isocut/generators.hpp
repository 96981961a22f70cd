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
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "isocut/driver.hpp"
#include "isocut/errors.hpp"
#include "isocut/hypergraph.hpp"
#include "isocut/subset.hpp"

namespace isocut {

struct GeneratorParams {
  std::size_t n = 10;
  std::size_t m = 15;
  std::size_t max_rank = 3;
  Value max_weight = 1;
  std::uint64_t seed = 1;
};

struct GeneratedInstance {
  Hypergraph graph;
  // Planted model only: the low-weight side and its crossing weight.
  std::optional<ElementSubset> planted_side;
  Value planted_value = 0;
};

namespace detail {

inline void check_params(const GeneratorParams& p) {
  if (p.n < 2) throw InvalidArgument("--n must be at least 2");
  if (p.m < 1) throw InvalidArgument("--m must be at least 1");
  if (p.max_rank < 2 || p.max_rank > p.n) throw InvalidArgument("--max-rank must be in [2, n]");
  if (p.max_weight < 1) throw InvalidArgument("--max-weight must be at least 1");
}

// `rank` distinct vertices drawn uniformly from `pool`.
inline std::vector<std::size_t> draw_vertices(const std::vector<std::size_t>& pool,
                                              std::size_t rank, std::mt19937_64& rng) {
  std::vector<std::size_t> picked = pool;
  for (std::size_t i = 0; i < rank; ++i) {
    const std::size_t j = i + uniform_below(rng, picked.size() - i);
    std::swap(picked[i], picked[j]);
  }
  picked.resize(rank);
  return picked;
}

inline std::size_t draw_between(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
  return lo + uniform_below(rng, hi - lo + 1);
}

}  // namespace detail

// m hyperedges of rank uniform in [2, max_rank] on uniformly chosen distinct
// vertices, weights uniform in [1, max_weight].
inline GeneratedInstance generate_uniform(const GeneratorParams& p) {
  detail::check_params(p);
  std::mt19937_64 rng(splitmix64(p.seed));
  std::vector<std::size_t> all(p.n);
  std::iota(all.begin(), all.end(), std::size_t{0});
  std::vector<Hyperedge> edges;
  for (std::size_t i = 0; i < p.m; ++i) {
    const std::size_t rank = detail::draw_between(rng, 2, p.max_rank);
    Hyperedge e{detail::draw_vertices(all, rank, rng), 0};
    e.weight = static_cast<Value>(detail::draw_between(rng, 1, static_cast<std::size_t>(p.max_weight)));
    edges.push_back(std::move(e));
  }
  return {Hypergraph(p.n, std::move(edges)), std::nullopt, 0};
}

// Vertices split into a planted side {0..a-1}, a = max(1, n/3), and the rest.
// Each side first gets a chain of heavy edges that keeps it connected; the
// remaining budget is split between heavy inside edges and a few light
// crossing edges (about one in eight, at least one). The crossing weight is
// reported so callers can compare against it.
inline GeneratedInstance generate_planted(const GeneratorParams& p) {
  detail::check_params(p);
  std::mt19937_64 rng(splitmix64(p.seed) ^ 0x706c616e746564ULL);
  const std::size_t a = std::max<std::size_t>(1, p.n / 3);
  std::vector<std::size_t> left(a);
  std::vector<std::size_t> right(p.n - a);
  std::iota(left.begin(), left.end(), std::size_t{0});
  std::iota(right.begin(), right.end(), a);
  const Value heavy = std::max<Value>(p.max_weight, 2);

  std::vector<Hyperedge> edges;
  for (const auto* side : {&left, &right}) {
    for (std::size_t i = 1; i < side->size(); ++i) {
      edges.push_back({{(*side)[i - 1], (*side)[i]}, heavy});
    }
  }
  const std::size_t crossing = std::max<std::size_t>(1, p.m / 8);
  for (std::size_t i = 0; i < crossing; ++i) {
    const std::size_t rank = detail::draw_between(rng, 2, p.max_rank);
    // One endpoint on each side, the rest anywhere.
    std::vector<std::size_t> verts{left[uniform_below(rng, left.size())],
                                   right[uniform_below(rng, right.size())]};
    std::vector<std::size_t> all(p.n);
    std::iota(all.begin(), all.end(), std::size_t{0});
    for (std::size_t v : detail::draw_vertices(all, rank, rng)) {
      if (verts.size() >= rank) break;
      if (std::find(verts.begin(), verts.end(), v) == verts.end()) verts.push_back(v);
    }
    edges.push_back({std::move(verts), 1});
  }
  for (std::size_t i = edges.size(); i < p.m; ++i) {
    const auto& side = (uniform_below(rng, 2) == 0 && left.size() >= 2) ? left : right;
    if (side.size() < 2) continue;
    const std::size_t rank = detail::draw_between(rng, 2, std::min(p.max_rank, side.size()));
    edges.push_back({detail::draw_vertices(side, rank, rng),
                     static_cast<Value>(detail::draw_between(rng, 2, static_cast<std::size_t>(heavy)))});
  }
  Hypergraph h(p.n, std::move(edges));
  ElementSubset planted(p.n, std::span<const std::size_t>(left));
  const Value value = cut_value(h, planted);
  return {std::move(h), std::move(planted), value};
}

// Two triangles {0,1,2} and {3,4,5} joined by the unit edge {2,3}.
inline Hypergraph dumbbell_hypergraph() {
  return Hypergraph(6, {{{0, 1}, 1}, {{1, 2}, 1}, {{0, 2}, 1},
                        {{3, 4}, 1}, {{4, 5}, 1}, {{3, 5}, 1},
                        {{2, 3}, 1}});
}

}  // namespace isocut
