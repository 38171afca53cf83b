// Copyright 2026 The mkpwc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MKPWC_BENCH_HPP
#define MKPWC_BENCH_HPP

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mkpwc/ea.hpp"
#include "mkpwc/init.hpp"
#include "mkpwc/instance.hpp"
#include "mkpwc/lp.hpp"

namespace mkpwc {

// (lp_bound - best) / lp_bound. Throws std::invalid_argument when
// lp_bound <= 0 or best exceeds the bound.
double gap(double best, double lp_bound);

struct BruteForceResult {
  double fitness = 0.0;
  std::vector<std::uint8_t> x;
};

inline constexpr std::size_t kBruteForceLimit = 25;

// Exhaustive search over all 2^n assignments (Gray-code order). Ties go to
// the lexicographically smallest x. Throws std::invalid_argument for
// n > kBruteForceLimit.
BruteForceResult brute_force_opt(const MkpInstance& inst);

struct RunResult {
  std::string instance;
  Algorithm algorithm = Algorithm::iwcea;
  std::uint64_t seed = 0;
  double best = 0.0;
  double lp_bound = 0.0;
  double gap = 0.0;
  std::uint64_t evaluations = 0;
  std::uint64_t accepted = 0;
  std::uint64_t rejected = 0;
  double wall_ms = 0.0;
  RunStatus status = RunStatus::completed;
  std::size_t pop_size = 0;
  std::vector<std::uint8_t> best_x;
};

enum class Comparison { better, equal, worse, unknown };
const char* to_string(Comparison cmp);

// Integral values (within 1e-6) compare exactly after rounding.
Comparison compare_to_known(double best, std::optional<double> known_best);

struct AggregateStats {
  std::string instance;
  Algorithm algorithm = Algorithm::iwcea;
  std::size_t runs = 0;
  double mean_gap = 0.0;
  double std_gap = 0.0;  // population form, divisor = runs
  double best = 0.0;
  std::optional<double> known_best;
  Comparison cmp = Comparison::unknown;
};

// Throws std::invalid_argument on an empty list or mixed instance/algorithm.
AggregateStats aggregate(std::span<const RunResult> results,
                         std::optional<double> known_best);

// Rows sorted by (instance, algorithm, seed). Columns:
//   instance,algo,seed,best,lp_bound,gap,evals,accepted,rejected,wall_ms
void write_runs_csv(std::ostream& out, std::span<const RunResult> results);
//   instance,algo,runs,mean_gap,std_gap,best,known_best,cmp
void write_aggregates_csv(std::ostream& out, std::span<const AggregateStats> stats);

// Everything a run needs that does not depend on the seed: the LP bound,
// surrogate multipliers and greedy lower bound z. Read-only after
// construction and shared by concurrent runs.
struct PreparedInstance {
  MkpInstance instance;
  lp::LpSolution relaxation;
  GreedyBound greedy;
  double z = 0.0;

  // Throws lp::LpError when the relaxation cannot be solved.
  static PreparedInstance prepare(MkpInstance inst, std::optional<double> z_override = std::nullopt);
  double lp_bound() const { return relaxation.objective; }
};

// One independent run with cfg.seed: initialization stream 0, EA stream 1.
RunResult run_once(const PreparedInstance& prepared, const EaConfig& cfg);

// Runs seeds base_seed, base_seed+1, ... on up to `threads` workers. The
// result order (and content) does not depend on `threads`.
std::vector<RunResult> run_many(const PreparedInstance& prepared, const EaConfig& cfg,
                                std::size_t runs, std::uint64_t base_seed,
                                std::size_t threads = 1);

}  // namespace mkpwc

#endif  // MKPWC_BENCH_HPP
