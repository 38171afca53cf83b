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

#ifndef MKPWC_INIT_HPP
#define MKPWC_INIT_HPP

#include <cstddef>
#include <optional>
#include <vector>

#include "mkpwc/coding.hpp"
#include "mkpwc/ea.hpp"
#include "mkpwc/instance.hpp"
#include "mkpwc/lp.hpp"
#include "mkpwc/rng.hpp"

namespace mkpwc {

// Surrogate multipliers from the duals of the LP relaxation (tiny negative
// round-off clamped to zero). Throws lp::LpError if the relaxation is not
// optimal.
SurrogateMultipliers multipliers_from(const lp::LpSolution& relaxation);

struct GreedyBound {
  double z = 0.0;
  Phenotype solution;
  SurrogateMultipliers multipliers;
};

// First-fit by unbiased pseudo-utility p_j / sum_i a_i r_ij with a the LP
// relaxation duals.
GreedyBound greedy_lower_bound(const MkpInstance& inst);
GreedyBound greedy_lower_bound(const MkpInstance& inst, const lp::LpSolution& relaxation);

enum class BoundsStatus {
  ok,
  // p.x >= z + 1 admits no LP point: nothing beats z by at least one.
  cut_infeasible,
};
const char* to_string(BoundsStatus status);

struct InitBounds {
  double z = 0.0;
  double k_min = 0.0;
  double k_max = 0.0;
  BoundsStatus status = BoundsStatus::ok;
};

// Minimum and maximum of sum_j x_j over the LP relaxation with the profit
// cut p.x >= z + 1.
InitBounds compute_bounds(const MkpInstance& inst, double z);

// Genotype equal to the optimum of the relaxation with sum_j x_j = k.
// Throws lp::LpError if that LP is infeasible.
Genotype hyperplane_seed(const MkpInstance& inst, double k);

// N genotypes from hyperplane LPs with k' ~ U[k_min, k_max]. All N values of
// k' are drawn first, in order, so the result depends only on the RNG state.
std::vector<Genotype> lp_seed_population(const MkpInstance& inst, const InitBounds& bounds,
                                         std::size_t count, Rng& rng);

std::vector<Genotype> random_population(const MkpInstance& inst, std::size_t count,
                                        const BiasConfig& bias, Rng& rng);

struct InitialPopulation {
  std::vector<Genotype> genotypes;
  // Set for IWCEA.
  std::optional<InitBounds> bounds;
  // IWCEA fell back to uniform random weights because the cut was infeasible.
  bool fell_back = false;
  // Best decoded fitness among the seeds (IWCEA only, else 0).
  double best_seed_fitness = 0.0;
};

// WCEA: random genotypes under the configured bias. IWCEA: LP seeds, or
// uniform random weights when the bounds LPs are cut-infeasible.
InitialPopulation build_initial_population(const MkpInstance& inst, const EaConfig& cfg,
                                           double z, Rng& rng);

}  // namespace mkpwc

#endif  // MKPWC_INIT_HPP
