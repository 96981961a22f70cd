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

// Acceptance suite. Each criterion prints one PASS/FAIL line; the exit code
// is nonzero when any criterion fails. All references are brute force over
// bitmasks from test_support.hpp.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "isocut.hpp"
#include "test_support.hpp"

namespace {

using namespace isocut;
using namespace isocut::testing;

int failures = 0;

void report(int id, const std::string& name, bool ok, const std::string& detail,
            std::chrono::steady_clock::time_point start) {
  const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                      std::chrono::steady_clock::now() - start)
                      .count();
  std::cout << (ok ? "PASS" : "FAIL") << " criterion " << id << " (" << name << "): " << detail
            << " [" << ms << " ms]" << std::endl;
  if (!ok) ++failures;
}

std::size_t ceil_log2(std::size_t x) {
  std::size_t b = 0;
  while ((std::size_t{1} << b) < x) ++b;
  return b;
}

// Criteria 1 and 8 share the same runs.
void mincut_equivalence() {
  const auto start = std::chrono::steady_clock::now();
  std::mt19937_64 rng(20261015);
  std::size_t runs = 0, mismatches = 0, size_violations = 0, driver_trials = 0;
  double worst_ratio = 0.0;
  for (int g = 0; g < 25; ++g) {
    const std::size_t n = std::uniform_int_distribution<std::size_t>(4, 12)(rng);
    const std::size_t m = std::uniform_int_distribution<std::size_t>(3, 20)(rng);
    const Hypergraph h = random_connected_hypergraph(rng, n, m, 5, 10);
    const auto expected = brute_nontrivial_min(raw_edges(h), n);
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
      DriverConfig cfg;
      cfg.rng_seed = seed;
      const HypergraphMincutResult r = hypergraph_mincut(h, cfg);
      ++runs;
      if (r.min_cut_value != expected || raw_cut(raw_edges(h), to_mask(r.side)) != expected) {
        ++mismatches;
      }
      for (const TrialRecord& t : r.driver.trials) {
        if (t.skipped) continue;
        ++driver_trials;
        const std::size_t bound = 4 * (h.representation_size() + t.terminals);
        if (t.step2_instance_size > bound) ++size_violations;
        worst_ratio = std::max(worst_ratio,
                               static_cast<double>(t.step2_instance_size) /
                                   static_cast<double>(h.representation_size() + t.terminals));
      }
    }
  }
  const double rate = static_cast<double>(mismatches) / static_cast<double>(runs);
  report(1, "brute-force min-cut equivalence", rate <= 0.01,
         std::to_string(runs - mismatches) + "/" + std::to_string(runs) + " match, " +
             std::to_string(mismatches) + " mismatches",
         start);
  report(8, "disjoint-ground accounting", size_violations == 0,
         std::to_string(size_violations) + " of " + std::to_string(driver_trials) +
             " trials above 4(p+|R|), worst ratio " + std::to_string(worst_ratio),
         start);
}

// Criteria 2, 3 and 4 share the same runs.
void isolating_equivalence() {
  const auto start = std::chrono::steady_clock::now();
  std::mt19937_64 rng(7);
  std::size_t runs = 0, set_mismatch = 0, cell_overflow = 0, count_mismatch = 0,
              containment = 0;
  for (int i = 0; i < 50; ++i) {
    const std::size_t n = std::uniform_int_distribution<std::size_t>(3, 10)(rng);
    const std::size_t m = std::uniform_int_distribution<std::size_t>(2, 15)(rng);
    const Hypergraph h = random_hypergraph(rng, n, m, 4, 10);
    const std::size_t r_size = std::uniform_int_distribution<std::size_t>(2, n - 1)(rng);
    std::vector<std::size_t> pool(n);
    for (std::size_t v = 0; v < n; ++v) pool[v] = v;
    std::shuffle(pool.begin(), pool.end(), rng);
    ElementSubset r(n);
    for (std::size_t j = 0; j < r_size; ++j) r.insert(pool[j]);
    const Mask r_mask = to_mask(r);
    const auto edges = raw_edges(h);

    const CutOracle f(h);
    BruteForceBlackbox brute;
    CutFunctionBlackbox flow(h);
    const IsolatingResult results[] = {isolating_sets(f, TerminalSet(r), brute),
                                       isolating_sets(f, TerminalSet(r), flow)};
    for (const IsolatingResult& res : results) {
      ++runs;
      std::size_t cells = 0;
      for (const IsolatedTerminal& t : res.terminals) {
        const Mask v = Mask{1} << t.terminal;
        const BruteStCut want = brute_constrained_min(
            n, v, r_mask & ~v, [&](Mask s) { return raw_cut(edges, s); });
        const Mask got = to_mask(t.isolating_set);
        if (want.minimal_minimizers.size() != 1 || got != want.minimal_minimizers[0] ||
            t.value != want.value) {
          ++set_mismatch;
        }
        if (!t.isolating_set.is_subset_of(t.cell)) ++containment;
        cells += t.cell.size();
      }
      if (cells > n) ++cell_overflow;
      if (res.stats.step1_calls != ceil_log2(r_size) || res.stats.step2_calls != r_size) {
        ++count_mismatch;
      }
    }
  }
  report(2, "isolating-set oracle equivalence", set_mismatch == 0 && cell_overflow == 0,
         std::to_string(runs) + " runs, " + std::to_string(set_mismatch) +
             " set mismatches, " + std::to_string(cell_overflow) + " runs with sum |U_v| > n",
         start);
  report(3, "call counts", count_mismatch == 0,
         std::to_string(count_mismatch) + " of " + std::to_string(runs) +
             " runs off ceil(log2 |R|) + |R|",
         start);
  report(4, "containment", containment == 0,
         std::to_string(containment) + " terminals with S_v not inside U_v", start);
}

Capacity saturating_add(Capacity a, Capacity b) {
  if (a == kInfiniteCapacity || b == kInfiniteCapacity) return kInfiniteCapacity;
  return a + b;
}

void flow_engine() {
  const auto start = std::chrono::steady_clock::now();
  std::mt19937_64 rng(11);
  std::size_t bad = 0;
  for (int i = 0; i < 200; ++i) {
    const std::size_t nodes = std::uniform_int_distribution<std::size_t>(2, 12)(rng);
    const std::size_t s = 0, t = nodes - 1;
    FlowNetwork net(nodes, s, t);
    const std::size_t arcs = std::uniform_int_distribution<std::size_t>(0, 3 * nodes)(rng);
    for (std::size_t a = 0; a < arcs; ++a) {
      const std::size_t u = std::uniform_int_distribution<std::size_t>(0, nodes - 1)(rng);
      const std::size_t v = std::uniform_int_distribution<std::size_t>(0, nodes - 1)(rng);
      if (u == v) continue;
      const bool inf = std::uniform_int_distribution<int>(0, 9)(rng) == 0;
      net.add_arc(u, v, inf ? kInfiniteCapacity
                            : std::uniform_int_distribution<Capacity>(0, 10)(rng));
    }
    // Enumerate every source side containing s and not t.
    std::optional<Capacity> best;
    Mask minimal = 0;
    for (Mask side = 0; side < (Mask{1} << nodes); ++side) {
      if (!((side >> s) & 1U) || ((side >> t) & 1U)) continue;
      Capacity c = 0;
      for (const Arc& a : net.arcs()) {
        if (((side >> a.from) & 1U) && !((side >> a.to) & 1U)) c = saturating_add(c, a.capacity);
      }
      if (!best || c < *best) {
        best = c;
        minimal = side;
      } else if (c == *best) {
        minimal &= side;
      }
    }
    if (*best == kInfiniteCapacity) {
      bool threw = false;
      try {
        (void)max_flow(net);
      } catch (const std::exception&) {
        threw = true;
      }
      if (!threw) ++bad;
      continue;
    }
    const CutResult r = max_flow(net);
    if (r.flow_value != *best || to_mask(r.source_side) != minimal) ++bad;
  }
  report(5, "flow/cut engine", bad == 0, std::to_string(bad) + " of 200 networks disagree",
         start);
}

void reduction() {
  const auto start = std::chrono::steady_clock::now();
  std::mt19937_64 rng(13);
  std::size_t bad = 0, checks = 0;
  for (int i = 0; i < 100; ++i) {
    const std::size_t n = std::uniform_int_distribution<std::size_t>(2, 10)(rng);
    const std::size_t m = std::uniform_int_distribution<std::size_t>(1, 15)(rng);
    const Hypergraph h = random_hypergraph(rng, n, m, 5, 10);
    const auto edges = raw_edges(h);
    for (int pair = 0; pair < 5; ++pair) {
      const std::size_t s = std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
      std::size_t t = std::uniform_int_distribution<std::size_t>(0, n - 2)(rng);
      if (t >= s) ++t;
      const BruteStCut want = brute_constrained_min(
          n, Mask{1} << s, Mask{1} << t, [&](Mask side) { return raw_cut(edges, side); });
      const StCut got = st_mincut(h, ElementSubset(n, {s}), ElementSubset(n, {t}));
      ++checks;
      if (got.value != want.value || want.minimal_minimizers.size() != 1 ||
          to_mask(got.source_side) != want.minimal_minimizers[0]) {
        ++bad;
      }
    }
  }
  report(6, "reduction faithfulness", bad == 0,
         std::to_string(bad) + " of " + std::to_string(checks) + " s-t pairs disagree", start);
}

void sampling_constants() {
  const auto start = std::chrono::steady_clock::now();
  constexpr std::size_t n = 120, k = 30, planted = 20, trials = 100000;
  std::size_t exactly_one = 0;
  for (std::size_t i = 0; i < trials; ++i) {
    std::mt19937_64 rng(trial_seed(42, k, i));
    const ElementSubset r = sample_terminals(n, k, rng);
    std::size_t hits = 0;
    for (std::size_t v = 0; v < planted; ++v) hits += r.contains(v) ? 1 : 0;
    if (hits == 1) ++exactly_one;
  }
  const double p = static_cast<double>(exactly_one) / trials;
  const double target = 2.0 / 3.0 * std::exp(-2.0 / 3.0);
  report(7, "sampling constants", std::abs(p - target) <= 0.05,
         "P(exactly one) = " + std::to_string(p) + ", target " + std::to_string(target), start);
}

std::optional<std::string> capture(const std::string& cmd) {
  FILE* pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) return std::nullopt;
  std::string out;
  char buf[4096];
  std::size_t got = 0;
  while ((got = std::fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, got);
  if (pclose(pipe) != 0) return std::nullopt;
  return out;
}

void determinism() {
  const auto start = std::chrono::steady_clock::now();
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / ("isocut_acceptance_" +
                                                    std::to_string(::getpid()));
  fs::create_directories(dir);
  const std::string cli = ISOCUT_CLI_PATH;
  const std::string planted = (dir / "planted.hgr").string();
  const std::string uniform = (dir / "uniform.hgr").string();
  std::ofstream(planted) << capture(cli + " gen --model planted --n 14 --m 30 --seed 3")
                                .value_or("");
  std::ofstream(uniform) << capture(cli + " gen --model uniform --n 10 --m 18 --seed 9")
                                .value_or("");
  const std::vector<std::string> commands = {
      cli + " gen --model planted --n 20 --m 40 --seed 5",
      cli + " gen --model uniform --n 12 --m 25 --max-rank 4 --seed 6",
      cli + " mincut " + planted + " --seed 1",
      cli + " mincut " + planted + " --seed 77 --verify",
      cli + " mincut " + uniform + " --seed 2",
      cli + " mincut " + uniform + " --seed 3 --threads 2",
      cli + " isolate " + planted + " --terminals 1,5,9,14",
      cli + " sfm --demo concave:9 --seed 4",
      cli + " sfm --demo cut:dumbbell --seed 8",
      cli + " mincut " + uniform + " --seed 5 --text",
  };
  std::size_t bad = 0;
  for (const std::string& c : commands) {
    const auto a = capture(c + " 2>/dev/null");
    const auto b = capture(c + " 2>/dev/null");
    if (!a || !b || a->empty() || *a != *b) {
      ++bad;
      std::cout << "  differs or failed: " << c << std::endl;
    }
  }
  fs::remove_all(dir);
  report(9, "determinism", bad == 0,
         std::to_string(commands.size() - bad) + "/" + std::to_string(commands.size()) +
             " commands byte-identical across two runs",
         start);
}

}  // namespace

int main() {
  try {
    flow_engine();
    reduction();
    isolating_equivalence();
    sampling_constants();
    determinism();
    mincut_equivalence();
  } catch (const std::exception& e) {
    std::cout << "FAIL acceptance aborted: " << e.what() << std::endl;
    return 1;
  }
  return failures == 0 ? 0 : 1;
}
