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

#ifndef MKPWC_EA_HPP
#define MKPWC_EA_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "mkpwc/coding.hpp"
#include "mkpwc/instance.hpp"
#include "mkpwc/rng.hpp"

namespace mkpwc {

enum class Algorithm {
  // Log-normal weights, pseudo-utility decoding with LP duals, random
  // initial population.
  wcea,
  // Uniform weights on [0, p_max/p_j], biased-profit decoding, initial
  // population from hyperplane-constrained LPs.
  iwcea,
};

const char* to_string(Algorithm algo);
std::optional<Algorithm> parse_algorithm(const std::string& name);

enum class MutationPolicy {
  // Every gene resampled independently with probability per_gene_rate
  // (3/n when the rate is left at 0).
  per_gene,
  // Exactly one uniformly chosen gene resampled.
  single_gene,
};

struct EaConfig {
  std::size_t pop_size = 100;
  std::uint64_t max_evals = 1'000'000;
  Algorithm algorithm = Algorithm::iwcea;
  MutationPolicy mutation = MutationPolicy::single_gene;
  double per_gene_rate = 0.0;
  BiasConfig bias;
  std::uint64_t seed = 1;
  // Consecutive duplicate rejections after which the run stops as converged.
  std::uint64_t duplicate_cap = 100'000;
  // Re-check population invariants after every step (slow).
  bool verify_invariants = false;
  // When an initial member cannot be made distinct, drop it instead of
  // failing; the run continues with the smaller population (at least 2).
  bool shrink_population = false;

  // Defaults for each algorithm on a given instance.
  static EaConfig wcea(const MkpInstance& inst, double gamma = 0.05);
  static EaConfig iwcea(const MkpInstance& inst);

  DecodeOrder decode_order() const {
    return algorithm == Algorithm::wcea ? DecodeOrder::pseudo_utility
                                        : DecodeOrder::biased_profit;
  }
  double mutation_rate(std::size_t n) const;
};

struct Individual {
  Genotype genotype;
  Phenotype phenotype;

  double fitness() const { return phenotype.fitness(); }
};

// Fixed-size population with pairwise-distinct phenotypes and a hash index
// for the duplicate test.
class Population {
 public:
  // Throws std::invalid_argument on fewer than two members or duplicate
  // phenotypes.
  explicit Population(std::vector<Individual> members);

  std::size_t size() const { return members_.size(); }
  const Individual& operator[](std::size_t k) const { return members_[k]; }
  const std::vector<Individual>& members() const { return members_; }

  bool contains(const Phenotype& ph) const;
  // Lowest fitness; ties go to the lowest index.
  std::size_t worst_index() const;
  // Highest fitness; ties go to the lowest index.
  std::size_t best_index() const;
  void replace(std::size_t k, Individual child);

  // Full O(N^2) recheck, independent of the hash index.
  bool pairwise_distinct() const;

 private:
  void index_add(std::size_t k);
  void index_remove(std::size_t k);

  std::vector<Individual> members_;
  std::unordered_map<std::uint64_t, std::vector<std::uint32_t>> index_;
};

// Two independent binary tournaments. Each draws two distinct members and
// keeps the fitter one (the first drawn on a tie). The two winners may be
// the same member.
std::pair<std::size_t, std::size_t> tournament_select(const Population& pop, Rng& rng);

// Each child gene copies the corresponding gene of p1 or p2 with equal
// probability.
Genotype uniform_crossover(const Genotype& p1, const Genotype& p2, Rng& rng);

// Same, with the parent choice given explicitly (true = take p1).
Genotype uniform_crossover(const Genotype& p1, const Genotype& p2,
                           const std::vector<bool>& take_first);

// Resamples genes in place per the configured policy and bias scheme.
// Returns the number of genes resampled.
std::size_t mutate(Genotype& child, const MkpInstance& inst, const EaConfig& cfg, Rng& rng);

enum class StepOutcome { accepted, rejected_duplicate };
enum class RunStatus { completed, converged };
const char* to_string(RunStatus status);

struct RunOutcome {
  Individual best;
  std::uint64_t evaluations = 0;
  std::uint64_t accepted = 0;
  std::uint64_t rejected = 0;
  // Initial members that had to be mutated to become distinct.
  std::size_t repaired_initial = 0;
  // Population size actually used (below pop_size only after shrinking).
  std::size_t pop_size = 0;
  RunStatus status = RunStatus::completed;
  double wall_ms = 0.0;
};

// Steady-state engine: tournament selection, uniform crossover, mutation,
// duplicate rejection, replacement of the worst member. Rejected children
// do not count as evaluations.
class SteadyStateEa {
 public:
  // Initial genotypes are decoded; members whose phenotype duplicates an
  // earlier one are mutated until distinct. Throws std::invalid_argument if
  // that is impossible (the instance has too few distinct decodings for
  // the population size, unless shrink_population is set) or if WCEA is
  // requested without multipliers.
  SteadyStateEa(const MkpInstance& inst, EaConfig cfg, std::vector<Genotype> initial,
                std::optional<SurrogateMultipliers> multipliers = std::nullopt);

  StepOutcome step();
  // Steps until max_evals accepted children or the duplicate cap is hit.
  RunOutcome run();

  const Population& population() const { return *pop_; }
  const Individual& best() const { return best_; }
  std::uint64_t evaluations() const { return evaluations_; }
  std::uint64_t accepted() const { return accepted_; }
  std::uint64_t rejected() const { return rejected_; }
  std::size_t repaired_initial() const { return repaired_; }
  bool converged() const { return consecutive_rejections_ >= cfg_.duplicate_cap; }
  bool finished() const { return evaluations_ >= cfg_.max_evals || converged(); }
  const EaConfig& config() const { return cfg_; }

 private:
  void check_invariants(double previous_best) const;

  const MkpInstance* inst_;
  EaConfig cfg_;
  Rng rng_;
  Decoder decoder_;
  std::optional<Population> pop_;
  Individual best_;
  std::uint64_t evaluations_ = 0;
  std::uint64_t accepted_ = 0;
  std::uint64_t rejected_ = 0;
  std::uint64_t consecutive_rejections_ = 0;
  std::size_t repaired_ = 0;
  std::size_t last_replaced_ = 0;
  Phenotype scratch_;
};

}  // namespace mkpwc

#endif  // MKPWC_EA_HPP
