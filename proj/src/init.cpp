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

#include "mkpwc/init.hpp"

#include <algorithm>

namespace mkpwc {

SurrogateMultipliers multipliers_from(const lp::LpSolution& relaxation) {
  if (!relaxation.optimal()) {
    throw lp::LpError(std::string("LP relaxation is ") + lp::to_string(relaxation.status));
  }
  SurrogateMultipliers a;
  a.a.reserve(relaxation.duals.size());
  for (double y : relaxation.duals) a.a.push_back(std::max(0.0, y));
  return a;
}

GreedyBound greedy_lower_bound(const MkpInstance& inst) {
  return greedy_lower_bound(inst, lp::solve(lp::relax_mkp(inst)));
}

GreedyBound greedy_lower_bound(const MkpInstance& inst, const lp::LpSolution& relaxation) {
  GreedyBound out;
  out.multipliers = multipliers_from(relaxation);
  const std::vector<double> profits(inst.profits().begin(), inst.profits().end());
  const PseudoUtilities u = pseudo_utilities(profits, inst, out.multipliers);
  out.solution = first_fit_decode(inst, utility_order_key(u, profits));
  out.z = out.solution.fitness();
  return out;
}

const char* to_string(BoundsStatus status) {
  return status == BoundsStatus::ok ? "ok" : "cut_infeasible";
}

InitBounds compute_bounds(const MkpInstance& inst, double z) {
  InitBounds out;
  out.z = z;
  const lp::LpSolution hi = lp::solve(lp::bounds_lp(inst, z, lp::Sense::maximize));
  const lp::LpSolution lo = lp::solve(lp::bounds_lp(inst, z, lp::Sense::minimize));
  if (hi.status == lp::Status::unbounded || lo.status == lp::Status::unbounded) {
    throw lp::LpError("bounds LP reported unbounded");
  }
  if (!hi.optimal() || !lo.optimal()) {
    out.status = BoundsStatus::cut_infeasible;
    return out;
  }
  out.k_max = hi.objective;
  out.k_min = std::min(lo.objective, hi.objective);
  return out;
}

Genotype hyperplane_seed(const MkpInstance& inst, double k) {
  const lp::LpSolution sol = lp::solve(lp::with_hyperplane(lp::relax_mkp(inst), k));
  if (!sol.optimal()) {
    throw lp::LpError("hyperplane LP with k=" + std::to_string(k) + " is " +
                      lp::to_string(sol.status));
  }
  return Genotype{sol.x};
}

std::vector<Genotype> lp_seed_population(const MkpInstance& inst, const InitBounds& bounds,
                                         std::size_t count, Rng& rng) {
  if (bounds.status != BoundsStatus::ok) {
    throw std::invalid_argument("LP seeding needs bounds with status ok");
  }
  std::vector<double> ks(count);
  for (auto& k : ks) k = rng.uniform(bounds.k_min, bounds.k_max);
  const lp::LinearProgram base = lp::relax_mkp(inst);
  std::vector<Genotype> out;
  out.reserve(count);
  for (double k : ks) {
    const lp::LpSolution sol = lp::solve(lp::with_hyperplane(base, k));
    if (!sol.optimal()) {
      throw lp::LpError("hyperplane LP infeasible for k'=" + std::to_string(k) +
                        " inside [k_min, k_max]");
    }
    out.push_back(Genotype{sol.x});
  }
  return out;
}

std::vector<Genotype> random_population(const MkpInstance& inst, std::size_t count,
                                        const BiasConfig& bias, Rng& rng) {
  std::vector<Genotype> out(count);
  for (auto& g : out) {
    g.weights.resize(inst.items());
    for (std::size_t j = 0; j < inst.items(); ++j) g.weights[j] = sample_weight(bias, inst, j, rng);
  }
  return out;
}

InitialPopulation build_initial_population(const MkpInstance& inst, const EaConfig& cfg,
                                           double z, Rng& rng) {
  InitialPopulation out;
  if (cfg.algorithm == Algorithm::wcea) {
    out.genotypes = random_population(inst, cfg.pop_size, cfg.bias, rng);
    return out;
  }
  out.bounds = compute_bounds(inst, z);
  if (out.bounds->status == BoundsStatus::cut_infeasible) {
    out.fell_back = true;
    out.genotypes = random_population(inst, cfg.pop_size, BiasConfig::uniform(inst), rng);
    return out;
  }
  out.genotypes = lp_seed_population(inst, *out.bounds, cfg.pop_size, rng);
  Decoder decoder(inst, DecodeOrder::biased_profit);
  for (const auto& g : out.genotypes) {
    out.best_seed_fitness = std::max(out.best_seed_fitness, decoder.evaluate(g).fitness());
  }
  return out;
}

}  // namespace mkpwc
