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
#include <charconv>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "isocut/errors.hpp"
#include "isocut/oracle.hpp"
#include "isocut/subset.hpp"

namespace isocut {

struct Hyperedge {
  std::vector<std::size_t> vertices;  // sorted, distinct
  Value weight = 1;

  friend bool operator==(const Hyperedge&, const Hyperedge&) = default;
};

// Weighted hypergraph on vertices 0..n-1. Vertex lists are sorted and
// deduplicated, and identical hyperedges are merged by adding weights, in
// order of first appearance.
class Hypergraph {
 public:
  Hypergraph(std::size_t vertex_count, std::vector<Hyperedge> edges) : n_(vertex_count) {
    if (n_ == 0) throw InvalidArgument("hypergraph needs at least one vertex");
    std::map<std::vector<std::size_t>, std::size_t> index;
    for (Hyperedge& e : edges) {
      std::sort(e.vertices.begin(), e.vertices.end());
      e.vertices.erase(std::unique(e.vertices.begin(), e.vertices.end()), e.vertices.end());
      if (e.vertices.empty()) throw InvalidArgument("hyperedge without vertices");
      if (e.vertices.back() >= n_) {
        throw InvalidArgument("hyperedge vertex " + std::to_string(e.vertices.back()) +
                              " outside 0.." + std::to_string(n_ - 1));
      }
      if (e.weight < 1) throw InvalidArgument("hyperedge weights must be positive");
      total_weight_ = checked_add(total_weight_, e.weight);
      auto [it, fresh] = index.try_emplace(e.vertices, edges_.size());
      if (fresh) {
        p_ += e.vertices.size();
        edges_.push_back(std::move(e));
      } else {
        edges_[it->second].weight += e.weight;
      }
    }
  }

  std::size_t vertex_count() const noexcept { return n_; }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  // p = Σ_e |e|
  std::size_t representation_size() const noexcept { return p_; }
  Value total_weight() const noexcept { return total_weight_; }
  const std::vector<Hyperedge>& edges() const noexcept { return edges_; }

  friend bool operator==(const Hypergraph& a, const Hypergraph& b) {
    return a.n_ == b.n_ && a.edges_ == b.edges_;
  }

 private:
  std::size_t n_;
  std::vector<Hyperedge> edges_;
  std::size_t p_ = 0;
  Value total_weight_ = 0;
};

// Total weight of hyperedges with vertices on both sides of (S, V \ S).
inline Value cut_value(const Hypergraph& h, const ElementSubset& s) {
  if (s.universe_size() != h.vertex_count()) {
    throw InvalidArgument("cut side is over a different vertex set");
  }
  Value total = 0;
  for (const Hyperedge& e : h.edges()) {
    std::size_t inside = 0;
    for (std::size_t v : e.vertices) inside += s.contains(v) ? 1 : 0;
    if (inside != 0 && inside != e.vertices.size()) total += e.weight;
  }
  return total;
}

// Cut function of a hypergraph as a symmetric submodular oracle. Keeps a
// reference to the hypergraph.
class CutOracle final : public SubmodularOracle {
 public:
  explicit CutOracle(const Hypergraph& h)
      : SubmodularOracle(h.vertex_count(), true, h.total_weight()), h_(h) {}

  const Hypergraph& hypergraph() const noexcept { return h_; }

 protected:
  Value value_of(const ElementSubset& s) const override { return cut_value(h_, s); }

 private:
  const Hypergraph& h_;
};

// ---------------------------------------------------------------------------
// hMETIS text format
//
//   % comment
//   m n [fmt]
//   [w] v1 v2 ...      (m lines; weight present when fmt is 1 or 11)
//   [vertex weights]   (n lines when fmt is 10 or 11; read and ignored)
//
// Vertices are 1-indexed in the file.

namespace detail {

inline std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

inline std::uint64_t parse_uint(std::string_view tok, std::size_t line, const char* what) {
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) {
    throw ParseError(line, std::string("expected ") + what + ", got '" + std::string(tok) + "'");
  }
  return v;
}

}  // namespace detail

inline Hypergraph parse_hypergraph(std::string_view text) {
  std::vector<std::pair<std::size_t, std::vector<std::string_view>>> lines;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t end = std::min(text.find('\n', pos), text.size());
    ++line_no;
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    if (!line.empty() && line.front() == '%') continue;
    auto toks = detail::split_ws(line);
    if (!toks.empty()) lines.emplace_back(line_no, std::move(toks));
    if (end == text.size()) break;
  }
  const std::size_t eof_line = line_no;

  if (lines.empty()) throw ParseError(eof_line, "missing header line 'm n [fmt]'");
  const auto& [header_line, header] = lines.front();
  if (header.size() < 2 || header.size() > 3) {
    throw ParseError(header_line, "header must be 'm n [fmt]'");
  }
  const std::uint64_t m = detail::parse_uint(header[0], header_line, "edge count");
  const std::uint64_t n = detail::parse_uint(header[1], header_line, "vertex count");
  std::uint64_t fmt = 0;
  if (header.size() == 3) fmt = detail::parse_uint(header[2], header_line, "format flag");
  if (fmt != 0 && fmt != 1 && fmt != 10 && fmt != 11) {
    throw ParseError(header_line, "unsupported format flag " + std::to_string(fmt));
  }
  if (n == 0) throw ParseError(header_line, "hypergraph needs at least one vertex");
  const bool edge_weights = fmt == 1 || fmt == 11;
  const bool vertex_weights = fmt == 10 || fmt == 11;

  const std::size_t expected = 1 + m + (vertex_weights ? n : 0);
  if (lines.size() < expected) {
    throw ParseError(eof_line, "unexpected end of file: expected " + std::to_string(m) +
                                   " hyperedges" + (vertex_weights ? " and vertex weights" : "") +
                                   ", found " + std::to_string(lines.size() - 1) + " data lines");
  }
  if (lines.size() > expected) {
    throw ParseError(lines[expected].first, "more data lines than the header announces");
  }

  std::vector<Hyperedge> edges;
  edges.reserve(m);
  for (std::size_t i = 1; i <= m; ++i) {
    const auto& [ln, toks] = lines[i];
    Hyperedge e;
    std::size_t first = 0;
    if (edge_weights) {
      const std::uint64_t w = detail::parse_uint(toks[0], ln, "edge weight");
      if (w == 0) throw ParseError(ln, "edge weight must be positive");
      if (w > static_cast<std::uint64_t>(std::numeric_limits<Value>::max())) {
        throw ParseError(ln, "edge weight too large");
      }
      e.weight = static_cast<Value>(w);
      first = 1;
    }
    if (toks.size() <= first) throw ParseError(ln, "hyperedge without vertices");
    for (std::size_t j = first; j < toks.size(); ++j) {
      const std::uint64_t v = detail::parse_uint(toks[j], ln, "vertex id");
      if (v < 1 || v > n) {
        throw ParseError(ln, "vertex " + std::to_string(v) + " out of range 1.." +
                                 std::to_string(n));
      }
      e.vertices.push_back(static_cast<std::size_t>(v - 1));
    }
    edges.push_back(std::move(e));
  }
  for (std::size_t i = m + 1; i < expected; ++i) {
    const auto& [ln, toks] = lines[i];
    if (toks.size() != 1) throw ParseError(ln, "expected a single vertex weight");
    detail::parse_uint(toks[0], ln, "vertex weight");
  }
  try {
    return Hypergraph(static_cast<std::size_t>(n), std::move(edges));
  } catch (const InvalidArgument& e) {
    throw ParseError(header_line, e.what());
  }
}

// Canonical hMETIS text. Weights are written only when some edge is not 1.
inline std::string serialize_hypergraph(const Hypergraph& h) {
  const bool weighted = std::any_of(h.edges().begin(), h.edges().end(),
                                    [](const Hyperedge& e) { return e.weight != 1; });
  std::ostringstream out;
  out << h.edge_count() << ' ' << h.vertex_count();
  if (weighted) out << " 1";
  out << '\n';
  for (const Hyperedge& e : h.edges()) {
    if (weighted) out << e.weight << ' ';
    for (std::size_t i = 0; i < e.vertices.size(); ++i) {
      out << (i ? " " : "") << e.vertices[i] + 1;
    }
    out << '\n';
  }
  return out.str();
}

// JSON mirror: {"n": 3, "edges": [{"verts": [1, 2], "w": 5}, ...]}, with
// 1-indexed vertices; "w" defaults to 1.
inline Hypergraph parse_hypergraph_json(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(1, std::string("invalid JSON: ") + e.what());
  }
  try {
    const auto n = doc.at("n").get<std::size_t>();
    std::vector<Hyperedge> edges;
    std::size_t index = 0;
    for (const auto& je : doc.at("edges")) {
      ++index;
      Hyperedge e;
      e.weight = je.value("w", Value{1});
      if (e.weight < 1) throw ParseError(1, "edge " + std::to_string(index) + ": weight must be positive");
      for (const auto& jv : je.at("verts")) {
        const auto v = jv.get<std::int64_t>();
        if (v < 1 || static_cast<std::size_t>(v) > n) {
          throw ParseError(1, "edge " + std::to_string(index) + ": vertex " + std::to_string(v) +
                                  " out of range 1.." + std::to_string(n));
        }
        e.vertices.push_back(static_cast<std::size_t>(v - 1));
      }
      edges.push_back(std::move(e));
    }
    return Hypergraph(n, std::move(edges));
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(1, std::string("malformed hypergraph JSON: ") + e.what());
  } catch (const InvalidArgument& e) {
    throw ParseError(1, e.what());
  }
}

inline nlohmann::json hypergraph_to_json(const Hypergraph& h) {
  nlohmann::json edges = nlohmann::json::array();
  for (const Hyperedge& e : h.edges()) {
    nlohmann::json verts = nlohmann::json::array();
    for (std::size_t v : e.vertices) verts.push_back(v + 1);
    edges.push_back({{"verts", verts}, {"w", e.weight}});
  }
  return {{"n", h.vertex_count()}, {"edges", edges}};
}

}  // namespace isocut
