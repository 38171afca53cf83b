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

#include "mkpwc/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <mutex>
#include <ostream>
#include <stdexcept>
#include <thread>
#include <tuple>

namespace mkpwc {

double gap(double best, double lp_bound) {
  if (!(lp_bound > 0.0)) throw std::invalid_argument("gap needs a positive LP bound");
  if (best > lp_bound * (1.0 + 1e-9)) {
    throw std::invalid_argument("solution value exceeds the LP bound");
  }
  return std::clamp((lp_bound - best) / lp_bound, 0.0, 1.0);
}

BruteForceResult brute_force_opt(const MkpInstance& inst) {
  const std::size_t n = inst.items();
  const std::size_t m = inst.constraints();
  if (n > kBruteForceLimit) {
    throw std::invalid_argument("brute force limited to n <= " +
                                std::to_string(kBruteForceLimit));
  }
  std::vector<double> used(m, 0.0);
  double profit = 0.0;
  std::uint64_t mask = 0;
  std::uint64_t best_mask = 0;
  double best = 0.0;

  // Lexicographic order on (x_1, x_2, ...): at the first differing item the
  // smaller vector has a 0.
  auto lex_smaller = [](std::uint64_t a, std::uint64_t b) {
    const std::uint64_t diff = a ^ b;
    return diff != 0 && (a & (diff & -diff)) == 0;
  };
  auto feasible = [&] {
    for (std::size_t i = 0; i < m; ++i) {
      if (used[i] > inst.capacity(i) + 1e-9 * std::max(1.0, inst.capacity(i))) return false;
    }
    return true;
  };

  const std::uint64_t total = std::uint64_t{1} << n;
  for (std::uint64_t step = 1; step < total; ++step) {
    const auto j = static_cast<std::size_t>(__builtin_ctzll(step));
    const std::uint64_t bit = std::uint64_t{1} << j;
    const double sign = (mask & bit) ? -1.0 : 1.0;
    mask ^= bit;
    profit += sign * inst.profit(j);
    const auto column = inst.item_column(j);
    for (std::size_t i = 0; i < m; ++i) used[i] += sign * column[i];
    if (profit < best - 1e-9 || !feasible()) continue;
    if (profit > best + 1e-9 || lex_smaller(mask, best_mask)) {
      best = profit;
      best_mask = mask;
    }
  }

  BruteForceResult out;
  out.x.resize(n);
  double exact = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    out.x[j] = (best_mask >> j) & 1u;
    if (out.x[j]) exact += inst.profit(j);
  }
  out.fitness = exact;
  return out;
}

const char* to_string(Comparison cmp) {
  switch (cmp) {
    case Comparison::better: return "better";
    case Comparison::equal: return "equal";
    case Comparison::worse: return "worse";
    case Comparison::unknown: return "unknown";
  }
  return "unknown";
}

namespace {

bool near_integer(double v) { return std::fabs(v - std::round(v)) <= 1e-6; }

std::string format_fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
  return buf;
}

std::string format_value(double v) {
  if (near_integer(v)) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%lld", static_cast<long long>(std::llround(v)));
    return buf;
  }
  return format_fixed(v, 6);
}

}  // namespace

Comparison compare_to_known(double best, std::optional<double> known_best) {
  if (!known_best) return Comparison::unknown;
  if (near_integer(best) && near_integer(*known_best)) {
    const long long a = std::llround(best);
    const long long b = std::llround(*known_best);
    return a > b ? Comparison::better : a == b ? Comparison::equal : Comparison::worse;
  }
  if (std::fabs(best - *known_best) <= 1e-6) return Comparison::equal;
  return best > *known_best ? Comparison::better : Comparison::worse;
}

AggregateStats aggregate(std::span<const RunResult> results,
                         std::optional<double> known_best) {
  if (results.empty()) throw std::invalid_argument("cannot aggregate zero runs");
  AggregateStats out;
  out.instance = results.front().instance;
  out.algorithm = results.front().algorithm;
  out.runs = results.size();
  out.known_best = known_best;

  // Sorted gaps make the floating-point sums independent of input order.
  std::vector<double> gaps;
  gaps.reserve(results.size());
  out.best = results.front().best;
  for (const auto& r : results) {
    if (r.instance != out.instance || r.algorithm != out.algorithm) {
      throw std::invalid_argument("aggregate over mixed instances or algorithms");
    }
    gaps.push_back(r.gap);
    out.best = std::max(out.best, r.best);
  }
  std::sort(gaps.begin(), gaps.end());
  const auto count = static_cast<double>(gaps.size());
  double sum = 0.0;
  for (double g : gaps) sum += g;
  out.mean_gap = sum / count;
  double sq = 0.0;
  for (double g : gaps) sq += (g - out.mean_gap) * (g - out.mean_gap);
  out.std_gap = std::sqrt(sq / count);
  out.cmp = compare_to_known(out.best, known_best);
  return out;
}

void write_runs_csv(std::ostream& out, std::span<const RunResult> results) {
  std::vector<const RunResult*> rows;
  for (const auto& r : results) rows.push_back(&r);
  std::stable_sort(rows.begin(), rows.end(), [](const RunResult* a, const RunResult* b) {
    return std::make_tuple(a->instance, std::string(to_string(a->algorithm)), a->seed) <
           std::make_tuple(b->instance, std::string(to_string(b->algorithm)), b->seed);
  });
  out << "instance,algo,seed,best,lp_bound,gap,evals,accepted,rejected,wall_ms\n";
  for (const RunResult* r : rows) {
    out << r->instance << ',' << to_string(r->algorithm) << ',' << r->seed << ','
        << format_value(r->best) << ',' << format_fixed(r->lp_bound, 6) << ','
        << format_fixed(r->gap, 6) << ',' << r->evaluations << ',' << r->accepted << ','
        << r->rejected << ',' << format_fixed(r->wall_ms, 3) << '\n';
  }
}

void write_aggregates_csv(std::ostream& out, std::span<const AggregateStats> stats) {
  std::vector<const AggregateStats*> rows;
  for (const auto& s : stats) rows.push_back(&s);
  std::stable_sort(rows.begin(), rows.end(), [](const AggregateStats* a, const AggregateStats* b) {
    return std::make_tuple(a->instance, std::string(to_string(a->algorithm))) <
           std::make_tuple(b->instance, std::string(to_string(b->algorithm)));
  });
  out << "instance,algo,runs,mean_gap,std_gap,best,known_best,cmp\n";
  for (const AggregateStats* s : rows) {
    out << s->instance << ',' << to_string(s->algorithm) << ',' << s->runs << ','
        << format_fixed(s->mean_gap, 6) << ',' << format_fixed(s->std_gap, 6) << ','
        << format_value(s->best) << ','
        << (s->known_best ? format_value(*s->known_best) : std::string()) << ','
        << to_string(s->cmp) << '\n';
  }
}

// ---------------------------------------------------------------------------
// Harness

PreparedInstance PreparedInstance::prepare(MkpInstance inst, std::optional<double> z_override) {
  lp::LpSolution relaxation = lp::solve(lp::relax_mkp(inst));
  if (!relaxation.optimal()) {
    throw lp::LpError(std::string("LP relaxation is ") + lp::to_string(relaxation.status));
  }
  GreedyBound greedy = greedy_lower_bound(inst, relaxation);
  const double z = z_override.value_or(greedy.z);
  return PreparedInstance{std::move(inst), std::move(relaxation), std::move(greedy), z};
}

RunResult run_once(const PreparedInstance& prepared, const EaConfig& cfg) {
  const MkpInstance& inst = prepared.instance;
  Rng init_rng(cfg.seed, 0);
  InitialPopulation initial = build_initial_population(inst, cfg, prepared.z, init_rng);

  std::optional<SurrogateMultipliers> multipliers;
  if (cfg.algorithm == Algorithm::wcea) multipliers = prepared.greedy.multipliers;
  SteadyStateEa ea(inst, cfg, std::move(initial.genotypes), std::move(multipliers));
  const RunOutcome outcome = ea.run();

  RunResult r;
  r.instance = inst.name();
  r.algorithm = cfg.algorithm;
  r.seed = cfg.seed;
  r.best = outcome.best.fitness();
  r.lp_bound = prepared.lp_bound();
  r.gap = gap(r.best, r.lp_bound);
  r.evaluations = outcome.evaluations;
  r.accepted = outcome.accepted;
  r.rejected = outcome.rejected;
  r.wall_ms = outcome.wall_ms;
  r.status = outcome.status;
  r.pop_size = outcome.pop_size;
  r.best_x = outcome.best.phenotype.to_vector();
  return r;
}

std::vector<RunResult> run_many(const PreparedInstance& prepared, const EaConfig& cfg,
                                std::size_t runs, std::uint64_t base_seed,
                                std::size_t threads) {
  std::vector<RunResult> results(runs);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (;;) {
      const std::size_t k = next.fetch_add(1);
      if (k >= runs) return;
      try {
        EaConfig local = cfg;
        local.seed = base_seed + k;
        results[k] = run_once(prepared, local);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  threads = std::clamp<std::size_t>(threads, 1, std::max<std::size_t>(runs, 1));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);
  return results;
}

}  // namespace mkpwc
