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

#include "mkpwc/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "mkpwc/bench.hpp"
#include "mkpwc/init.hpp"
#include "mkpwc/instance.hpp"
#include "mkpwc/lp.hpp"

namespace mkpwc::cli {

namespace {

// Thrown by handlers to leave with a specific exit code.
struct Exit {
  int code;
  std::string message;
};

struct InstanceFlags {
  std::vector<std::string> paths;
  long index = -1;
  std::string layout = "multi";
  bool preprocess = false;
};

struct RunFlags {
  std::string algo = "iwcea";
  std::vector<std::string> algos;
  std::size_t pop_size = 100;
  std::uint64_t max_evals = 1'000'000;
  double gamma = 0.05;
  std::size_t runs = 30;
  std::uint64_t seed = 1;
  std::size_t threads = 1;
  std::string mutation;
  std::uint64_t dup_cap = 100'000;
  std::optional<double> z;
  std::string output;
  std::string aggregate_output;
  std::string runs_output;
};

struct GenFlags {
  std::size_t n = 100;
  std::size_t m = 5;
  double alpha = 0.5;
  std::uint64_t seed = 1;
  double profit_min = 1.0;
  double profit_max = 1000.0;
  double weight_min = 0.0;
  double weight_max = 1000.0;
  bool correlated = false;
  bool real = false;
  std::string output;
};

struct LpFlags {
  std::optional<double> hyperplane;
  std::optional<double> bounds_z;
};

OrlibLayout layout_of(const std::string& name) {
  return name == "single" ? OrlibLayout::single : OrlibLayout::multi;
}

std::vector<MkpInstance> load(const std::string& path, const InstanceFlags& flags) {
  try {
    return load_orlib_file(path, layout_of(flags.layout));
  } catch (const ParseError& e) {
    throw Exit{kExitInputError, path + ": " + e.what()};
  } catch (const std::runtime_error& e) {
    throw Exit{kExitInputError, e.what()};
  }
}

// Selected instances of one file, reduced if --preprocess is set, otherwise
// rejected when not well-stated.
std::vector<MkpInstance> select(const std::string& path, const InstanceFlags& flags,
                                bool require_single, std::ostream& err) {
  std::vector<MkpInstance> all = load(path, flags);
  std::vector<MkpInstance> chosen;
  if (flags.index >= 0) {
    if (static_cast<std::size_t>(flags.index) >= all.size()) {
      throw Exit{kExitBadFlags, "--index " + std::to_string(flags.index) + " out of range; " +
                                    path + " holds " + std::to_string(all.size()) +
                                    " instance(s)"};
    }
    chosen.push_back(all[static_cast<std::size_t>(flags.index)]);
  } else if (require_single) {
    chosen.push_back(all.front());
  } else {
    chosen = std::move(all);
  }

  for (auto& inst : chosen) {
    const ValidationReport report = validate(inst);
    if (report.well_stated()) continue;
    if (!flags.preprocess) {
      throw Exit{kExitInputError, "instance " + inst.name() +
                                      " is not well-stated (use --preprocess):\n" +
                                      report.describe()};
    }
    try {
      Preprocessed reduced = preprocess(inst);
      err << "preprocess " << inst.name() << ": fixed " << reduced.fixed_zero_items.size()
          << " item(s) to zero, dropped " << reduced.dropped_constraints.size()
          << " slack constraint(s)\n";
      inst = std::move(reduced.reduced);
    } catch (const std::invalid_argument& e) {
      throw Exit{kExitInputError, "instance " + inst.name() + ": " + e.what()};
    }
  }
  return chosen;
}

EaConfig make_config(const MkpInstance& inst, Algorithm algo, const RunFlags& flags) {
  EaConfig cfg = algo == Algorithm::wcea ? EaConfig::wcea(inst, flags.gamma) : EaConfig::iwcea(inst);
  cfg.pop_size = flags.pop_size;
  cfg.max_evals = flags.max_evals;
  cfg.duplicate_cap = flags.dup_cap;
  cfg.shrink_population = true;
  if (flags.mutation == "per-gene") cfg.mutation = MutationPolicy::per_gene;
  if (flags.mutation == "single") cfg.mutation = MutationPolicy::single_gene;
  return cfg;
}

std::ostream& open_or(const std::string& path, std::ofstream& file, std::ostream& fallback) {
  if (path.empty()) return fallback;
  file.open(path);
  if (!file) throw Exit{kExitBadFlags, "cannot write '" + path + "'"};
  return file;
}

PreparedInstance prepare(MkpInstance inst, const RunFlags& flags) {
  try {
    return PreparedInstance::prepare(std::move(inst), flags.z);
  } catch (const lp::LpError& e) {
    throw Exit{kExitLpError, e.what()};
  }
}

std::vector<RunResult> run_all(const PreparedInstance& prepared, Algorithm algo,
                               const RunFlags& flags, std::ostream& err) {
  try {
    std::vector<RunResult> results =
        run_many(prepared, make_config(prepared.instance, algo, flags), flags.runs, flags.seed,
                 flags.threads);
    std::size_t smallest = flags.pop_size;
    for (const auto& r : results) smallest = std::min(smallest, r.pop_size);
    if (smallest < flags.pop_size) {
      err << "note: " << prepared.instance.name() << " admits too few distinct solutions; "
          << "population reduced to " << smallest << " in some runs\n";
    }
    for (const auto& r : results) {
      if (r.status == RunStatus::converged) {
        err << "note: " << r.instance << " seed " << r.seed << " stopped after "
            << r.evaluations << " evaluations (duplicate cap reached)\n";
      }
    }
    return results;
  } catch (const lp::LpError& e) {
    throw Exit{kExitLpError, e.what()};
  } catch (const std::invalid_argument& e) {
    throw Exit{kExitInputError, e.what()};
  }
}

void check_run_flags(const RunFlags& flags) {
  if (flags.pop_size < 2) throw Exit{kExitBadFlags, "--pop-size must be at least 2"};
  if (flags.max_evals < 1) throw Exit{kExitBadFlags, "--max-evals must be at least 1"};
  if (flags.runs < 1) throw Exit{kExitBadFlags, "--runs must be at least 1"};
  if (!(flags.gamma > 0.0)) throw Exit{kExitBadFlags, "--gamma must be positive"};
}

int solve_command(const InstanceFlags& inst_flags, const RunFlags& flags, std::ostream& out,
                  std::ostream& err) {
  check_run_flags(flags);
  const Algorithm algo = *parse_algorithm(flags.algo);
  MkpInstance inst = select(inst_flags.paths.front(), inst_flags, true, err).front();
  const std::optional<double> known = inst.known_best();
  const PreparedInstance prepared = prepare(std::move(inst), flags);
  const std::vector<RunResult> results = run_all(prepared, algo, flags, err);
  const AggregateStats stats = aggregate(results, known);

  std::ofstream runs_file, agg_file;
  std::ostream& runs_out = open_or(flags.output, runs_file, out);
  std::ostream& agg_out = open_or(flags.aggregate_output, agg_file, out);
  write_runs_csv(runs_out, results);
  if (&runs_out == &agg_out) runs_out << '\n';
  write_aggregates_csv(agg_out, std::span(&stats, 1));
  return kExitOk;
}

int bench_command(const InstanceFlags& inst_flags, const RunFlags& flags, std::ostream& out,
                  std::ostream& err) {
  check_run_flags(flags);
  std::vector<Algorithm> algos;
  for (const auto& name : flags.algos.empty() ? std::vector<std::string>{"iwcea"} : flags.algos) {
    algos.push_back(*parse_algorithm(name));
  }
  std::vector<RunResult> all_runs;
  std::vector<AggregateStats> all_stats;
  for (const auto& path : inst_flags.paths) {
    for (MkpInstance& inst : select(path, inst_flags, false, err)) {
      const std::optional<double> known = inst.known_best();
      const PreparedInstance prepared = prepare(std::move(inst), flags);
      for (Algorithm algo : algos) {
        std::vector<RunResult> results = run_all(prepared, algo, flags, err);
        all_stats.push_back(aggregate(results, known));
        all_runs.insert(all_runs.end(), results.begin(), results.end());
      }
    }
  }
  std::ofstream agg_file, runs_file;
  write_aggregates_csv(open_or(flags.output, agg_file, out), all_stats);
  if (!flags.runs_output.empty()) {
    write_runs_csv(open_or(flags.runs_output, runs_file, out), all_runs);
  }
  return kExitOk;
}

std::string format_real(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

int lp_command(const InstanceFlags& inst_flags, const LpFlags& flags, std::ostream& out,
               std::ostream& err) {
  const MkpInstance inst = select(inst_flags.paths.front(), inst_flags, true, err).front();
  try {
    if (flags.bounds_z) {
      const InitBounds b = compute_bounds(inst, *flags.bounds_z);
      out << "z: " << format_real(b.z) << '\n'
          << "status: " << to_string(b.status) << '\n';
      if (b.status == BoundsStatus::ok) {
        out << "k_min: " << format_real(b.k_min) << '\n'
            << "k_max: " << format_real(b.k_max) << '\n';
      }
      return kExitOk;
    }
    lp::LinearProgram program = lp::relax_mkp(inst);
    if (flags.hyperplane) program = lp::with_hyperplane(std::move(program), *flags.hyperplane);
    const lp::LpSolution sol = lp::solve(program);
    out << "status: " << lp::to_string(sol.status) << '\n';
    if (!sol.optimal()) return kExitOk;
    out << "objective: " << format_real(sol.objective) << '\n';
    out << "iterations: " << sol.iterations << '\n';
    std::size_t fractional = 0;
    out << "primal:\n";
    for (std::size_t j = 0; j < sol.x.size(); ++j) {
      const bool frac = std::fabs(sol.x[j] - std::round(sol.x[j])) > 1e-9;
      fractional += frac ? 1 : 0;
      out << "  x[" << j << "] = " << format_real(sol.x[j]) << (frac ? "  fractional" : "")
          << '\n';
    }
    out << "fractional: " << fractional << '\n';
    out << "duals:\n";
    for (std::size_t i = 0; i < sol.duals.size(); ++i) {
      const bool hyper = flags.hyperplane && i + 1 == sol.duals.size();
      out << "  " << (hyper ? "hyperplane" : "row[" + std::to_string(i) + "]") << " = "
          << format_real(sol.duals[i]) << '\n';
    }
  } catch (const lp::LpError& e) {
    throw Exit{kExitLpError, e.what()};
  }
  return kExitOk;
}

int gen_command(const GenFlags& flags, std::ostream& out) {
  if (!(flags.alpha > 0.0 && flags.alpha < 1.0)) {
    throw Exit{kExitBadFlags, "--alpha must lie strictly between 0 and 1"};
  }
  GeneratorOptions opt;
  opt.items = flags.n;
  opt.constraints = flags.m;
  opt.tightness = flags.alpha;
  opt.seed = flags.seed;
  opt.profit_min = flags.profit_min;
  opt.profit_max = flags.profit_max;
  opt.consumption_min = flags.weight_min;
  opt.consumption_max = flags.weight_max;
  opt.correlated = flags.correlated;
  opt.integral = !flags.real;
  MkpInstance inst = [&] {
    try {
      return generate_random(opt);
    } catch (const std::invalid_argument& e) {
      throw Exit{kExitBadFlags, e.what()};
    }
  }();
  std::ofstream file;
  write_orlib(open_or(flags.output, file, out), std::span(&inst, 1));
  return kExitOk;
}

int validate_command(const InstanceFlags& flags, std::ostream& out) {
  bool all_ok = true;
  for (const auto& path : flags.paths) {
    const std::vector<MkpInstance> all = load(path, flags);
    for (std::size_t k = 0; k < all.size(); ++k) {
      if (flags.index >= 0 && static_cast<long>(k) != flags.index) continue;
      const ValidationReport report = validate(all[k]);
      out << all[k].name() << ": n=" << all[k].items() << " m=" << all[k].constraints() << ' '
          << (report.well_stated() ? "well-stated" : "NOT well-stated") << '\n';
      std::istringstream lines(report.describe());
      for (std::string line; std::getline(lines, line);) out << "  " << line << '\n';
      all_ok = all_ok && report.well_stated();
    }
  }
  return all_ok ? kExitOk : kExitInputError;
}

void add_instance_flags(CLI::App* cmd, InstanceFlags& flags, bool many) {
  if (many) {
    cmd->add_option("--instance,instances", flags.paths, "OR-Library instance file(s)")
        ->required();
  } else {
    cmd->add_option("--instance", flags.paths, "OR-Library instance file")
        ->required()
        ->expected(1);
  }
  cmd->add_option("--index", flags.index, "instance index within the file (default: first/all)")
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--format", flags.layout, "file layout: multi (leading count) or single")
      ->check(CLI::IsMember({"multi", "single"}));
  cmd->add_flag("--preprocess", flags.preprocess,
                "reduce ill-stated instances instead of rejecting them");
}

void add_run_flags(CLI::App* cmd, RunFlags& flags, bool many_algos) {
  if (many_algos) {
    cmd->add_option("--algo", flags.algos, "algorithm(s): iwcea, wcea")
        ->delimiter(',')
        ->check(CLI::IsMember({"iwcea", "wcea"}));
  } else {
    cmd->add_option("--algo", flags.algo, "algorithm: iwcea or wcea")
        ->check(CLI::IsMember({"iwcea", "wcea"}));
  }
  cmd->add_option("--pop-size", flags.pop_size, "population size N");
  cmd->add_option("--max-evals", flags.max_evals, "accepted children per run (t_max)");
  cmd->add_option("--gamma", flags.gamma, "log-normal biasing intensity (WCEA)");
  cmd->add_option("--runs", flags.runs, "independent runs per instance");
  cmd->add_option("--seed", flags.seed, "base seed; run k uses seed+k");
  cmd->add_option("--threads", flags.threads, "worker threads")->check(CLI::PositiveNumber);
  cmd->add_option("--mutation", flags.mutation, "per-gene (3/n) or single")
      ->check(CLI::IsMember({"per-gene", "single"}));
  cmd->add_option("--dup-cap", flags.dup_cap, "consecutive duplicate rejections before stopping")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--z", flags.z, "lower bound z for IWCEA initialization (default: greedy)");
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Weight-coded evolutionary algorithms for the 0-1 multidimensional knapsack problem",
               "mkpwc"};
  app.require_subcommand(1);

  InstanceFlags inst_flags;
  RunFlags run_flags;
  GenFlags gen_flags;
  LpFlags lp_flags;

  auto* solve = app.add_subcommand("solve", "run one algorithm repeatedly on one instance");
  add_instance_flags(solve, inst_flags, false);
  add_run_flags(solve, run_flags, false);
  solve->add_option("--output", run_flags.output, "per-run CSV file (default stdout)");
  solve->add_option("--aggregate-output", run_flags.aggregate_output,
                    "aggregate CSV file (default stdout)");

  auto* bench = app.add_subcommand("bench", "aggregate gaps over instance files");
  add_instance_flags(bench, inst_flags, true);
  add_run_flags(bench, run_flags, true);
  bench->add_option("--output", run_flags.output, "aggregate CSV file (default stdout)");
  bench->add_option("--runs-output", run_flags.runs_output, "per-run CSV file");

  auto* lp_cmd = app.add_subcommand("lp", "solve the LP relaxation and print primal and duals");
  add_instance_flags(lp_cmd, inst_flags, false);
  lp_cmd->add_option("--hyperplane", lp_flags.hyperplane, "add sum_j x_j = k");
  lp_cmd->add_option("--bounds", lp_flags.bounds_z, "print k_min/k_max for lower bound z");

  auto* gen = app.add_subcommand("gen", "generate a random instance in OR-Library format");
  gen->add_option("--n", gen_flags.n, "items")->check(CLI::PositiveNumber);
  gen->add_option("--m", gen_flags.m, "constraints")->check(CLI::PositiveNumber);
  gen->add_option("--alpha", gen_flags.alpha, "tightness ratio in (0,1)");
  gen->add_option("--seed", gen_flags.seed, "generator seed");
  gen->add_option("--profit-min", gen_flags.profit_min);
  gen->add_option("--profit-max", gen_flags.profit_max);
  gen->add_option("--weight-min", gen_flags.weight_min);
  gen->add_option("--weight-max", gen_flags.weight_max);
  gen->add_flag("--correlated", gen_flags.correlated,
                "profits correlated with consumption (Chu-Beasley style)");
  gen->add_flag("--real", gen_flags.real, "real-valued data instead of integers");
  gen->add_option("--output", gen_flags.output, "output file (default stdout)");

  auto* validate_cmd = app.add_subcommand("validate", "report well-statedness violations");
  add_instance_flags(validate_cmd, inst_flags, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "mkpwc: " << e.what() << '\n';
    return kExitBadFlags;
  }

  try {
    if (*solve) return solve_command(inst_flags, run_flags, out, err);
    if (*bench) return bench_command(inst_flags, run_flags, out, err);
    if (*lp_cmd) return lp_command(inst_flags, lp_flags, out, err);
    if (*gen) return gen_command(gen_flags, out);
    if (*validate_cmd) return validate_command(inst_flags, out);
  } catch (const Exit& e) {
    err << "mkpwc: " << e.message << '\n';
    return e.code;
  }
  return kExitBadFlags;
}

}  // namespace mkpwc::cli
