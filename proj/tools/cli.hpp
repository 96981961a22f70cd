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

#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "CLI11.hpp"
#include "isocut.hpp"

namespace isocut::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 1;
inline constexpr int kExitMismatch = 2;
inline constexpr int kExitUsage = 64;
inline constexpr std::size_t kVerifyCap = 14;

using Json = nlohmann::ordered_json;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// .json files (or text starting with '{') use the JSON mirror, everything
// else the hMETIS format.
inline Hypergraph load_hypergraph(const std::string& path) {
  const std::string text = read_file(path);
  const auto first = text.find_first_not_of(" \t\r\n");
  const bool json = (path.size() >= 5 && path.substr(path.size() - 5) == ".json") ||
                    (first != std::string::npos && text[first] == '{');
  return json ? parse_hypergraph_json(text) : parse_hypergraph(text);
}

inline std::vector<std::size_t> one_based(const ElementSubset& s) {
  std::vector<std::size_t> out;
  s.for_each([&](std::size_t v) { out.push_back(v + 1); });
  return out;
}

inline std::string one_based_text(const ElementSubset& s) { return s.to_string(1); }

inline std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv("ISOCUT_SEED")) {
    try {
      std::size_t used = 0;
      const unsigned long long v = std::stoull(env, &used);
      if (used == std::string(env).size()) return v;
    } catch (const std::exception&) {
    }
    throw UsageError("ISOCUT_SEED must be an unsigned integer");
  }
  return 1;
}

inline Json per_k_json(const MinimizerResult& r) {
  Json rows = Json::array();
  for (const KBreakdown& row : r.per_k) {
    Json j{{"k", row.k}, {"calls", row.calls}};
    j["best_value"] = row.best_value ? Json(*row.best_value) : Json(nullptr);
    rows.push_back(std::move(j));
  }
  return rows;
}

struct MincutOptions {
  std::string file;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> reps;
  bool verify = false;
  bool text = false;
  bool timing = false;
  std::size_t threads = 1;
};

inline int cmd_mincut(const MincutOptions& opt, std::ostream& out, std::ostream& err) {
  const auto started = std::chrono::steady_clock::now();
  const Hypergraph h = load_hypergraph(opt.file);
  if (h.vertex_count() < 2) throw UsageError("minimum cut needs at least two vertices");
  DriverConfig cfg;
  cfg.rng_seed = resolve_seed(opt.seed);
  cfg.repetitions_per_k = opt.reps;
  cfg.threads = opt.threads;
  const std::size_t n = h.vertex_count();
  const HypergraphMincutResult r = hypergraph_mincut(h, cfg);

  Json verification{{"status", "not-requested"}};
  int code = kExitOk;
  if (opt.verify) {
    if (n <= kVerifyCap) {
      const CutOracle oracle(h);
      const NontrivialMinimum truth = brute_force_nontrivial_minimum(oracle);
      const bool match = truth.value == r.min_cut_value;
      verification = {{"status", match ? "match" : "mismatch"},
                      {"brute_force_value", truth.value}};
      if (!match) code = kExitMismatch;
    } else {
      verification = {{"status", "skipped"}, {"reason", "n exceeds " + std::to_string(kVerifyCap)}};
      err << "notice: verification skipped, n = " << n << " exceeds " << kVerifyCap << "\n";
    }
  }
  const auto elapsed = std::chrono::duration<double, std::milli>(
      std::chrono::steady_clock::now() - started).count();

  Json report;
  report["min_cut_value"] = r.min_cut_value;
  report["side"] = one_based(r.side);
  report["n"] = n;
  report["m"] = h.edge_count();
  report["p"] = h.representation_size();
  report["flow_calls"] = r.flow_calls;
  report["blackbox_calls"] = r.driver.blackbox_calls_total;
  report["oracle_queries"] = r.driver.oracle_queries;
  report["seed"] = cfg.rng_seed;
  report["trials"] = r.driver.trials_run;
  report["trials_skipped"] = r.driver.trials_skipped;
  report["repetitions"] = cfg.repetitions_for(n);
  report["k_schedule"] = cfg.schedule_for(n);
  report["per_k"] = per_k_json(r.driver);
  report["disconnected"] = r.disconnected;
  report["step2_contracted_size"] = r.contracted_size_total;
  report["verification"] = verification;
  if (opt.timing) report["wall_time_ms"] = elapsed;

  if (opt.text) {
    out << "min cut value: " << r.min_cut_value << "\n"
        << "side: " << one_based_text(r.side) << "\n"
        << "n = " << n << ", m = " << h.edge_count() << ", p = " << h.representation_size()
        << "\n"
        << "flow calls: " << r.flow_calls << ", blackbox calls: "
        << r.driver.blackbox_calls_total << ", trials: " << r.driver.trials_run << " ("
        << r.driver.trials_skipped << " skipped)\n"
        << "seed: " << cfg.rng_seed << "\n"
        << "verification: " << verification["status"].get<std::string>() << "\n";
    if (opt.timing) out << "wall time: " << elapsed << " ms\n";
  } else {
    out << report.dump(2) << "\n";
  }
  return code;
}

struct IsolateOptions {
  std::string file;
  std::string terminals;
  std::optional<std::uint64_t> seed;
  bool text = false;
};

inline ElementSubset parse_terminals(const std::string& spec, std::size_t n) {
  ElementSubset r(n);
  std::size_t count = 0;
  std::stringstream ss(spec);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    std::size_t used = 0;
    unsigned long long v = 0;
    try {
      v = std::stoull(tok, &used);
    } catch (const std::exception&) {
      throw UsageError("terminal '" + tok + "' is not a vertex id");
    }
    if (used != tok.size()) throw UsageError("terminal '" + tok + "' is not a vertex id");
    if (v < 1 || v > n) {
      throw UsageError("terminal " + tok + " out of range 1.." + std::to_string(n));
    }
    if (r.contains(v - 1)) throw UsageError("terminal " + tok + " listed twice");
    r.insert(v - 1);
    ++count;
  }
  if (count < 2) throw UsageError("need at least two distinct terminals");
  return r;
}

inline int cmd_isolate(const IsolateOptions& opt, std::ostream& out, std::ostream&) {
  const Hypergraph h = load_hypergraph(opt.file);
  const std::size_t n = h.vertex_count();
  const TerminalSet terminals(parse_terminals(opt.terminals, n));
  const CutOracle oracle(h);
  CutFunctionBlackbox blackbox(h);
  const IsolatingResult r = isolating_sets(oracle, terminals, blackbox);

  std::size_t cell_total = 0;
  for (const auto& t : r.terminals) cell_total += t.cell.size();
  if (cell_total > n) {
    throw ContractViolation("cells overlap: total size " + std::to_string(cell_total) + " > " +
                            std::to_string(n));
  }

  if (opt.text) {
    out << "terminal\t|U_v|\tf(S_v)\tS_v\n";
    for (const auto& t : r.terminals) {
      out << t.terminal + 1 << '\t' << t.cell.size() << '\t' << t.value << '\t'
          << one_based_text(t.isolating_set) << '\n';
    }
    out << "sum |U_v| = " << cell_total << " <= n = " << n << "\n"
        << "step 1 calls: " << r.stats.step1_calls << ", step 2 calls: " << r.stats.step2_calls
        << "\n";
    return kExitOk;
  }
  Json rows = Json::array();
  for (const auto& t : r.terminals) {
    rows.push_back({{"terminal", t.terminal + 1},
                    {"cell", one_based(t.cell)},
                    {"cell_size", t.cell.size()},
                    {"value", t.value},
                    {"isolating_set", one_based(t.isolating_set)}});
  }
  Json report;
  report["n"] = n;
  report["m"] = h.edge_count();
  report["p"] = h.representation_size();
  report["terminals"] = rows;
  report["cell_size_total"] = cell_total;
  report["step1_calls"] = r.stats.step1_calls;
  report["step2_calls"] = r.stats.step2_calls;
  report["step2_contracted_size"] = r.stats.step2_instance_size;
  report["flow_calls"] = blackbox.flow_calls();
  report["seed"] = resolve_seed(opt.seed);
  out << report.dump(2) << "\n";
  return kExitOk;
}

struct GenOptions {
  std::string model = "uniform";
  GeneratorParams params;
  std::optional<std::uint64_t> seed;
};

inline int cmd_gen(GenOptions opt, std::ostream& out, std::ostream&) {
  opt.params.seed = resolve_seed(opt.seed);
  GeneratedInstance g = [&] {
    try {
      if (opt.model == "uniform") return generate_uniform(opt.params);
      if (opt.model == "planted") return generate_planted(opt.params);
    } catch (const InvalidArgument& e) {
      throw UsageError(e.what());
    }
    throw UsageError("unknown model '" + opt.model + "' (expected uniform or planted)");
  }();
  out << "% isocut gen model=" << opt.model << " n=" << opt.params.n << " m=" << opt.params.m
      << " max-rank=" << opt.params.max_rank << " max-weight=" << opt.params.max_weight
      << " seed=" << opt.params.seed << "\n";
  if (g.planted_side) {
    out << "% planted cut value = " << g.planted_value << "\n"
        << "% planted side = " << one_based_text(*g.planted_side) << "\n";
  }
  out << serialize_hypergraph(g.graph);
  return kExitOk;
}

struct SfmOptions {
  std::string demo;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> reps;
  bool text = false;
};

inline int cmd_sfm(const SfmOptions& opt, std::ostream& out, std::ostream&) {
  const auto colon = opt.demo.find(':');
  if (colon == std::string::npos) throw UsageError("--demo must be cut:<file> or concave:<n>");
  const std::string family = opt.demo.substr(0, colon);
  const std::string arg = opt.demo.substr(colon + 1);

  std::optional<Hypergraph> graph;
  std::unique_ptr<SubmodularOracle> oracle;
  std::string label;
  if (family == "concave") {
    std::size_t used = 0;
    unsigned long long n = 0;
    try {
      n = std::stoull(arg, &used);
    } catch (const std::exception&) {
      throw UsageError("concave:<n> needs an integer n");
    }
    if (used != arg.size()) throw UsageError("concave:<n> needs an integer n");
    if (n < 2) throw UsageError("concave:<n> needs n >= 2");
    const auto size = static_cast<std::size_t>(n);
    oracle = std::make_unique<FunctionOracle>(
        GroundSet(size),
        [size](const ElementSubset& s) {
          return static_cast<Value>(std::min(s.size(), size - s.size()));
        },
        true, static_cast<Value>(size / 2));
    label = "concave";
  } else if (family == "cut") {
    std::ifstream probe(arg);
    if (!probe && arg == "dumbbell") {
      graph = dumbbell_hypergraph();
    } else {
      graph = load_hypergraph(arg);
    }
    if (graph->vertex_count() < 2) throw UsageError("cut demo needs at least two vertices");
    oracle = std::make_unique<CutOracle>(*graph);
    label = "cut";
  } else {
    throw UsageError("unknown demo family '" + family + "' (expected cut or concave)");
  }

  DriverConfig cfg;
  cfg.rng_seed = resolve_seed(opt.seed);
  cfg.repetitions_per_k = opt.reps;
  BruteForceBlackbox blackbox;
  const MinimizerResult r = find_nontrivial_minimizer(*oracle, cfg, blackbox);
  const std::size_t n = oracle->ground_size();

  std::size_t step1_calls = 0;
  std::size_t step2_calls = 0;
  std::size_t step2_ground = 0;
  for (const TrialRecord& t : r.trials) {
    step1_calls += t.step1_calls;
    step2_calls += t.step2_calls;
    step2_ground += t.step2_ground_total;
  }

  if (opt.text) {
    out << "family: " << label << ", n = " << n << "\n"
        << "nontrivial minimum value: " << r.best_value << "\n"
        << "side: " << one_based_text(r.best_set) << "\n"
        << "oracle queries: " << r.oracle_queries << ", blackbox calls: "
        << r.blackbox_calls_total << " (step 1: " << step1_calls << ", step 2: " << step2_calls
        << ", step 2 ground total: " << step2_ground << ")\n"
        << "trials: " << r.trials_run << " (" << r.trials_skipped << " skipped), seed "
        << cfg.rng_seed << "\n";
    return kExitOk;
  }
  Json report;
  report["family"] = label;
  report["n"] = n;
  if (graph) {
    report["m"] = graph->edge_count();
    report["p"] = graph->representation_size();
  }
  report["min_value"] = r.best_value;
  report["side"] = one_based(r.best_set);
  report["oracle_queries"] = r.oracle_queries;
  report["blackbox_calls"] = r.blackbox_calls_total;
  report["step1_calls"] = step1_calls;
  report["step2_calls"] = step2_calls;
  report["step2_ground_total"] = step2_ground;
  report["seed"] = cfg.rng_seed;
  report["trials"] = r.trials_run;
  report["trials_skipped"] = r.trials_skipped;
  report["repetitions"] = cfg.repetitions_for(n);
  report["k_schedule"] = cfg.schedule_for(n);
  report["per_k"] = per_k_json(r);
  out << report.dump(2) << "\n";
  return kExitOk;
}

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"isocut: isolating sets, nontrivial submodular minimizers, hypergraph min cut"};
  app.require_subcommand(1);

  MincutOptions mincut;
  auto* mincut_cmd = app.add_subcommand("mincut", "global minimum cut of a hypergraph file");
  mincut_cmd->add_option("file", mincut.file, "hMETIS or JSON hypergraph")->required();
  mincut_cmd->add_option("--seed", mincut.seed, "RNG seed (falls back to ISOCUT_SEED, then 1)");
  mincut_cmd->add_option("--reps", mincut.reps, "trials per k")->check(CLI::PositiveNumber);
  mincut_cmd->add_flag("--verify", mincut.verify, "compare with brute force when n <= 14");
  mincut_cmd->add_flag("--text", mincut.text, "human-readable output");
  mincut_cmd->add_flag("--json", [&](std::int64_t) { mincut.text = false; }, "JSON output (default)");
  mincut_cmd->add_option("--threads", mincut.threads, "worker threads")->check(CLI::PositiveNumber);
  mincut_cmd->add_flag("--timing", mincut.timing, "include wall time in the report");

  IsolateOptions isolate;
  auto* isolate_cmd = app.add_subcommand("isolate", "minimum isolating sets for given terminals");
  isolate_cmd->add_option("file", isolate.file, "hMETIS or JSON hypergraph")->required();
  isolate_cmd->add_option("--terminals", isolate.terminals, "comma-separated vertex ids (1-based)")
      ->required();
  isolate_cmd->add_option("--seed", isolate.seed, "accepted for interface symmetry");
  isolate_cmd->add_flag("--text", isolate.text, "human-readable table");
  isolate_cmd->add_flag("--json", [&](std::int64_t) { isolate.text = false; }, "JSON output (default)");

  GenOptions gen;
  auto* gen_cmd = app.add_subcommand("gen", "generate a random hypergraph in hMETIS format");
  gen_cmd->add_option("--model", gen.model, "uniform or planted");
  gen_cmd->add_option("--n", gen.params.n, "vertex count");
  gen_cmd->add_option("--m", gen.params.m, "hyperedge count");
  gen_cmd->add_option("--max-rank", gen.params.max_rank, "largest hyperedge rank");
  gen_cmd->add_option("--max-weight", gen.params.max_weight, "largest hyperedge weight");
  gen_cmd->add_option("--seed", gen.seed, "RNG seed");

  SfmOptions sfm;
  auto* sfm_cmd = app.add_subcommand("sfm", "nontrivial minimizer with the brute-force blackbox");
  sfm_cmd->add_option("--demo", sfm.demo, "cut:<file> or concave:<n>")->required();
  sfm_cmd->add_option("--seed", sfm.seed, "RNG seed");
  sfm_cmd->add_option("--reps", sfm.reps, "trials per k")->check(CLI::PositiveNumber);
  sfm_cmd->add_flag("--text", sfm.text, "human-readable output");
  sfm_cmd->add_flag("--json", [&](std::int64_t) { sfm.text = false; }, "JSON output (default)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*mincut_cmd) return cmd_mincut(mincut, out, err);
    if (*isolate_cmd) return cmd_isolate(isolate, out, err);
    if (*gen_cmd) return cmd_gen(gen, out, err);
    return cmd_sfm(sfm, out, err);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  }
}

}  // namespace isocut::cli
