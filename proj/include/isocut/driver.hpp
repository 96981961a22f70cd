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
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "isocut/errors.hpp"
#include "isocut/isolating.hpp"
#include "isocut/oracle.hpp"
#include "isocut/sfm.hpp"
#include "isocut/subset.hpp"

namespace isocut {

inline constexpr double kRepetitionConstant = 12.0;
inline constexpr double kScheduleRatio = 1.5;

// ceil(12 * log2 n), at least 1.
inline std::size_t default_repetitions(std::size_t n) {
  if (n < 2) return 1;
  const double reps = std::ceil(kRepetitionConstant * std::log2(static_cast<double>(n)) - 1e-9);
  return std::max<std::size_t>(1, static_cast<std::size_t>(reps));
}

// ceil(1.5^i) for i = 0, 1, ... while the value stays <= n, without repeats.
inline std::vector<std::size_t> default_k_schedule(std::size_t n) {
  std::vector<std::size_t> ks;
  for (double power = 1.0;; power *= kScheduleRatio) {
    const auto k = static_cast<std::size_t>(std::ceil(power));
    if (k > n) break;
    if (ks.empty() || ks.back() != k) ks.push_back(k);
  }
  return ks;
}

struct DriverConfig {
  // Unset fields take the defaults for the oracle's ground-set size.
  std::optional<std::size_t> repetitions_per_k;
  std::uint64_t rng_seed = 1;
  std::vector<std::size_t> k_schedule;
  std::size_t min_terminals = 2;
  // Worker threads for independent trials; results do not depend on it.
  std::size_t threads = 1;

  std::size_t repetitions_for(std::size_t n) const {
    const std::size_t reps = repetitions_per_k.value_or(default_repetitions(n));
    if (reps < 1) throw InvalidArgument("repetitions_per_k must be at least 1");
    return reps;
  }

  std::vector<std::size_t> schedule_for(std::size_t n) const {
    std::vector<std::size_t> ks = k_schedule.empty() ? default_k_schedule(n) : k_schedule;
    for (std::size_t k : ks) {
      if (k < 1 || k > n) {
        throw InvalidArgument("k = " + std::to_string(k) + " outside [1, " + std::to_string(n) +
                              "]");
      }
    }
    return ks;
  }
};

// ---------------------------------------------------------------------------
// Randomness

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Independent stream for trial `trial` of iteration `k`.
inline std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t k, std::uint64_t trial) {
  return splitmix64(splitmix64(splitmix64(seed) ^ k) ^ trial);
}

// Uniform integer in [0, bound) without modulo bias.
template <typename Rng>
std::uint64_t uniform_below(Rng& rng, std::uint64_t bound) {
  const std::uint64_t threshold = (0 - bound) % bound;
  for (;;) {
    const std::uint64_t x = rng();
    if (x >= threshold) return x % bound;
  }
}

// Each element of {0..n-1} independently with probability exactly 1/k.
template <typename Rng>
ElementSubset sample_terminals(std::size_t n, std::size_t k, Rng& rng) {
  if (k < 1 || k > n) {
    throw InvalidArgument("sampling rate 1/k needs 1 <= k <= n (k = " + std::to_string(k) +
                          ", n = " + std::to_string(n) + ")");
  }
  ElementSubset r(n);
  for (std::size_t v = 0; v < n; ++v) {
    if (uniform_below(rng, k) == 0) r.insert(v);
  }
  return r;
}

// ---------------------------------------------------------------------------
// Candidates

struct Candidate {
  ElementSubset set;
  Value value = 0;
};

// Of S and V \ S, the one with at most n/2 elements; on a tie in size, the
// lexicographically smaller.
inline ElementSubset canonical_side(const ElementSubset& s) {
  ElementSubset other = s.complement();
  const std::size_t a = s.size();
  const std::size_t b = other.size();
  if (a < b || (a == b && !lex_less(other, s))) return s;
  return other;
}

// Order by (value, size, lexicographic members).
inline bool better_candidate(const Candidate& a, const Candidate& b) {
  if (a.value != b.value) return a.value < b.value;
  if (a.set.size() != b.set.size()) return a.set.size() < b.set.size();
  return lex_less(a.set, b.set);
}

inline void keep_better(std::optional<Candidate>& best, const Candidate& c) {
  if (!best || better_candidate(c, *best)) best = c;
}

struct TrialRecord {
  std::size_t k = 0;
  std::size_t trial = 0;
  std::size_t terminals = 0;  // |R|
  bool skipped = false;       // |R| < min_terminals
  std::size_t step1_calls = 0;
  std::size_t step2_calls = 0;
  std::size_t step2_ground_total = 0;
  std::size_t step2_instance_size = 0;
  std::optional<Candidate> best;
};

struct AtKResult {
  std::size_t k = 0;
  std::optional<Candidate> best;
  std::size_t trials_run = 0;
  std::size_t trials_skipped = 0;
  std::uint64_t blackbox_calls = 0;
  std::vector<TrialRecord> trials;
};

struct KBreakdown {
  std::size_t k = 0;
  std::uint64_t calls = 0;
  std::optional<Value> best_value;
};

struct MinimizerResult {
  ElementSubset best_set;  // canonical side, ∅ ⊊ best_set ⊊ V
  Value best_value = 0;
  std::size_t trials_run = 0;
  std::size_t trials_skipped = 0;
  std::uint64_t blackbox_calls_total = 0;
  std::uint64_t oracle_queries = 0;
  std::vector<KBreakdown> per_k;
  std::vector<TrialRecord> trials;
};

class NoCandidateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

template <SfmBlackbox B>
TrialRecord run_trial(const SubmodularOracle& f, std::size_t k, std::size_t trial,
                      const DriverConfig& cfg, B& blackbox) {
  const std::size_t n = f.ground_size();
  std::mt19937_64 rng(trial_seed(cfg.rng_seed, k, trial));
  const ElementSubset sample = sample_terminals(n, k, rng);

  TrialRecord rec;
  rec.k = k;
  rec.trial = trial;
  rec.terminals = sample.size();
  if (rec.terminals < std::max<std::size_t>(2, cfg.min_terminals)) {
    rec.skipped = true;
    return rec;
  }
  const IsolatingResult iso = isolating_sets(f, TerminalSet(sample), blackbox);
  rec.step1_calls = iso.stats.step1_calls;
  rec.step2_calls = iso.stats.step2_calls;
  rec.step2_ground_total = iso.stats.step2_ground_total;
  rec.step2_instance_size = iso.stats.step2_instance_size;
  for (const IsolatedTerminal& t : iso.terminals) {
    // S_v holds v and avoids R \ {v}, so it is always a proper nonempty set.
    if (t.isolating_set.empty() || t.isolating_set.is_full()) continue;
    keep_better(rec.best, Candidate{canonical_side(t.isolating_set), t.value});
  }
  return rec;
}

}  // namespace detail

// Runs the configured number of independent trials at sampling rate 1/k and
// returns the best nontrivial isolating set seen. When k is within a factor
// 1.5 of the size of the smaller side of an optimal split, the true minimum
// is found with high probability.
template <SfmBlackbox B>
AtKResult find_nontrivial_minimizer_at_k(const SubmodularOracle& f, std::size_t k,
                                         const DriverConfig& cfg, B& blackbox) {
  const std::size_t n = f.ground_size();
  if (n < 2) throw InvalidArgument("nontrivial minimizers need a ground set of at least 2");
  if (k < 1 || k > n) throw InvalidArgument("k = " + std::to_string(k) + " outside [1, n]");
  const std::size_t reps = cfg.repetitions_for(n);

  AtKResult out;
  out.k = k;
  out.trials.resize(reps);
  std::vector<std::exception_ptr> errors(reps);
  auto run = [&](std::size_t t) {
    try {
      out.trials[t] = detail::run_trial(f, k, t, cfg, blackbox);
    } catch (...) {
      errors[t] = std::current_exception();
    }
  };
  const std::size_t workers = std::min(cfg.threads, reps);
  if (workers <= 1) {
    for (std::size_t t = 0; t < reps; ++t) run(t);
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t t = w; t < reps; t += workers) run(t);
      });
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  for (const TrialRecord& rec : out.trials) {
    ++out.trials_run;
    if (rec.skipped) {
      ++out.trials_skipped;
      continue;
    }
    out.blackbox_calls += rec.step1_calls + rec.step2_calls;
    if (rec.best) keep_better(out.best, *rec.best);
  }
  return out;
}

// Sweeps k over the schedule and returns the best candidate overall.
template <SfmBlackbox B>
MinimizerResult find_nontrivial_minimizer(const SubmodularOracle& f, const DriverConfig& cfg,
                                          B& blackbox) {
  const std::size_t n = f.ground_size();
  if (n < 2) throw InvalidArgument("nontrivial minimizers need a ground set of at least 2");
  const std::uint64_t queries_before = f.query_count();

  MinimizerResult result;
  std::optional<Candidate> best;
  for (std::size_t k : cfg.schedule_for(n)) {
    AtKResult at_k = find_nontrivial_minimizer_at_k(f, k, cfg, blackbox);
    result.trials_run += at_k.trials_run;
    result.trials_skipped += at_k.trials_skipped;
    result.blackbox_calls_total += at_k.blackbox_calls;
    KBreakdown row{k, at_k.blackbox_calls, std::nullopt};
    if (at_k.best) {
      row.best_value = at_k.best->value;
      keep_better(best, *at_k.best);
    }
    result.per_k.push_back(row);
    for (TrialRecord& rec : at_k.trials) result.trials.push_back(std::move(rec));
  }
  if (!best) {
    throw NoCandidateError("every trial sampled fewer than two terminals; add k = 1 to the "
                           "schedule or raise the repetition count");
  }
  result.best_set = std::move(best->set);
  result.best_value = best->value;
  result.oracle_queries = f.query_count() - queries_before;
  return result;
}

}  // namespace isocut
