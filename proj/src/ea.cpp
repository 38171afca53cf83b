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

#include "mkpwc/ea.hpp"

#include <algorithm>
#include <chrono>
#include <stdexcept>

namespace mkpwc {

const char* to_string(Algorithm algo) {
  return algo == Algorithm::wcea ? "wcea" : "iwcea";
}

std::optional<Algorithm> parse_algorithm(const std::string& name) {
  if (name == "wcea") return Algorithm::wcea;
  if (name == "iwcea") return Algorithm::iwcea;
  return std::nullopt;
}

const char* to_string(RunStatus status) {
  return status == RunStatus::completed ? "completed" : "converged";
}

EaConfig EaConfig::wcea(const MkpInstance& /*inst*/, double gamma) {
  EaConfig cfg;
  cfg.algorithm = Algorithm::wcea;
  cfg.mutation = MutationPolicy::per_gene;
  cfg.bias = BiasConfig::lognormal(gamma);
  return cfg;
}

EaConfig EaConfig::iwcea(const MkpInstance& inst) {
  EaConfig cfg;
  cfg.algorithm = Algorithm::iwcea;
  cfg.mutation = MutationPolicy::single_gene;
  cfg.bias = BiasConfig::uniform(inst);
  return cfg;
}

double EaConfig::mutation_rate(std::size_t n) const {
  if (per_gene_rate > 0.0) return per_gene_rate;
  return std::min(1.0, 3.0 / static_cast<double>(n));
}

// ---------------------------------------------------------------------------
// Population

Population::Population(std::vector<Individual> members) : members_(std::move(members)) {
  if (members_.size() < 2) throw std::invalid_argument("population needs at least two members");
  for (std::size_t k = 0; k < members_.size(); ++k) {
    if (contains(members_[k].phenotype)) {
      throw std::invalid_argument("population members must have distinct phenotypes");
    }
    index_add(k);
  }
}

bool Population::contains(const Phenotype& ph) const {
  const auto it = index_.find(ph.hash());
  if (it == index_.end()) return false;
  for (std::uint32_t k : it->second) {
    if (members_[k].phenotype == ph) return true;
  }
  return false;
}

std::size_t Population::worst_index() const {
  std::size_t worst = 0;
  for (std::size_t k = 1; k < members_.size(); ++k) {
    if (members_[k].fitness() < members_[worst].fitness()) worst = k;
  }
  return worst;
}

std::size_t Population::best_index() const {
  std::size_t best = 0;
  for (std::size_t k = 1; k < members_.size(); ++k) {
    if (members_[k].fitness() > members_[best].fitness()) best = k;
  }
  return best;
}

void Population::replace(std::size_t k, Individual child) {
  index_remove(k);
  members_[k] = std::move(child);
  index_add(k);
}

bool Population::pairwise_distinct() const {
  for (std::size_t a = 0; a < members_.size(); ++a) {
    for (std::size_t b = a + 1; b < members_.size(); ++b) {
      if (members_[a].phenotype.same_bits(members_[b].phenotype)) return false;
    }
  }
  return true;
}

void Population::index_add(std::size_t k) {
  index_[members_[k].phenotype.hash()].push_back(static_cast<std::uint32_t>(k));
}

void Population::index_remove(std::size_t k) {
  const auto it = index_.find(members_[k].phenotype.hash());
  auto& bucket = it->second;
  bucket.erase(std::find(bucket.begin(), bucket.end(), static_cast<std::uint32_t>(k)));
  if (bucket.empty()) index_.erase(it);
}

// ---------------------------------------------------------------------------
// Operators

std::pair<std::size_t, std::size_t> tournament_select(const Population& pop, Rng& rng) {
  const std::uint64_t n = pop.size();
  auto binary_tournament = [&] {
    const std::size_t a = rng.below(n);
    std::size_t b = rng.below(n - 1);
    if (b >= a) ++b;
    return pop[b].fitness() > pop[a].fitness() ? b : a;
  };
  const std::size_t first = binary_tournament();
  return {first, binary_tournament()};
}

Genotype uniform_crossover(const Genotype& p1, const Genotype& p2, Rng& rng) {
  if (p1.size() != p2.size()) throw std::invalid_argument("parents differ in length");
  Genotype child;
  child.weights.resize(p1.size());
  std::uint64_t bits = 0;
  for (std::size_t j = 0; j < p1.size(); ++j) {
    if ((j & 63) == 0) bits = rng();
    child.weights[j] = (bits & 1u) ? p1.weights[j] : p2.weights[j];
    bits >>= 1;
  }
  return child;
}

Genotype uniform_crossover(const Genotype& p1, const Genotype& p2,
                           const std::vector<bool>& take_first) {
  if (p1.size() != p2.size() || take_first.size() != p1.size()) {
    throw std::invalid_argument("parents and mask differ in length");
  }
  Genotype child;
  child.weights.resize(p1.size());
  for (std::size_t j = 0; j < p1.size(); ++j) {
    child.weights[j] = take_first[j] ? p1.weights[j] : p2.weights[j];
  }
  return child;
}

std::size_t mutate(Genotype& child, const MkpInstance& inst, const EaConfig& cfg, Rng& rng) {
  const std::size_t n = child.size();
  if (n != inst.items()) throw std::invalid_argument("genotype length differs from n");
  if (cfg.mutation == MutationPolicy::single_gene) {
    const std::size_t j = rng.below(n);
    child.weights[j] = sample_weight(cfg.bias, inst, j, rng);
    return 1;
  }
  const double rate = cfg.mutation_rate(n);
  std::size_t changed = 0;
  for (std::size_t j = 0; j < n; ++j) {
    if (rng.bernoulli(rate)) {
      child.weights[j] = sample_weight(cfg.bias, inst, j, rng);
      ++changed;
    }
  }
  return changed;
}

// ---------------------------------------------------------------------------
// Engine

SteadyStateEa::SteadyStateEa(const MkpInstance& inst, EaConfig cfg,
                             std::vector<Genotype> initial,
                             std::optional<SurrogateMultipliers> multipliers)
    : inst_(&inst),
      cfg_(cfg),
      rng_(cfg.seed, 1),
      decoder_(inst, cfg.decode_order(), std::move(multipliers)) {
  if (cfg_.pop_size < 2) throw std::invalid_argument("population size must be at least 2");
  if (cfg_.max_evals < 1) throw std::invalid_argument("max_evals must be at least 1");
  if (initial.size() != cfg_.pop_size) {
    throw std::invalid_argument("initial population size differs from pop_size");
  }

  constexpr int kRepairAttempts = 10'000;
  std::vector<Individual> members;
  members.reserve(initial.size());
  std::unordered_map<std::uint64_t, std::vector<std::size_t>> seen;
  auto duplicate = [&](const Phenotype& ph) {
    const auto it = seen.find(ph.hash());
    if (it == seen.end()) return false;
    return std::any_of(it->second.begin(), it->second.end(),
                       [&](std::size_t k) { return members[k].phenotype == ph; });
  };
  for (auto& g : initial) {
    Phenotype ph = decoder_.evaluate(g);
    if (duplicate(ph)) {
      ++repaired_;
      int attempt = 0;
      do {
        if (++attempt > kRepairAttempts) break;
        mutate(g, inst, cfg_, rng_);
        decoder_.evaluate(g, ph);
      } while (duplicate(ph));
      if (attempt > kRepairAttempts) {
        if (cfg_.shrink_population) continue;
        throw std::invalid_argument(
            "cannot build a population of distinct phenotypes; the instance has too "
            "few distinct decodings for this population size");
      }
    }
    seen[ph.hash()].push_back(members.size());
    members.push_back({std::move(g), std::move(ph)});
  }
  if (members.size() < 2) {
    throw std::invalid_argument("fewer than two distinct phenotypes in the initial population");
  }
  cfg_.pop_size = members.size();
  pop_.emplace(std::move(members));
  best_ = (*pop_)[pop_->best_index()];
}

StepOutcome SteadyStateEa::step() {
  const double previous_best = best_.fitness();
  const auto [a, b] = tournament_select(*pop_, rng_);
  Genotype child = uniform_crossover((*pop_)[a].genotype, (*pop_)[b].genotype, rng_);
  mutate(child, *inst_, cfg_, rng_);
  decoder_.evaluate(child, scratch_);

  if (pop_->contains(scratch_)) {
    ++rejected_;
    ++consecutive_rejections_;
    if (cfg_.verify_invariants) check_invariants(previous_best);
    return StepOutcome::rejected_duplicate;
  }

  consecutive_rejections_ = 0;
  Individual accepted{std::move(child), scratch_};
  if (accepted.fitness() > best_.fitness()) best_ = accepted;
  last_replaced_ = pop_->worst_index();
  pop_->replace(last_replaced_, std::move(accepted));
  ++accepted_;
  ++evaluations_;
  if (cfg_.verify_invariants) check_invariants(previous_best);
  return StepOutcome::accepted;
}

RunOutcome SteadyStateEa::run() {
  const auto start = std::chrono::steady_clock::now();
  while (!finished()) step();
  RunOutcome out;
  out.best = best_;
  out.evaluations = evaluations_;
  out.accepted = accepted_;
  out.rejected = rejected_;
  out.repaired_initial = repaired_;
  out.pop_size = pop_->size();
  out.status = evaluations_ < cfg_.max_evals ? RunStatus::converged : RunStatus::completed;
  out.wall_ms = std::chrono::duration<double, std::milli>(
                    std::chrono::steady_clock::now() - start)
                    .count();
  return out;
}

void SteadyStateEa::check_invariants(double previous_best) const {
  if (best_.fitness() < previous_best) throw std::logic_error("best fitness decreased");
  if (!pop_->pairwise_distinct()) throw std::logic_error("duplicate phenotypes in population");
  for (const auto& member : pop_->members()) {
    if (member.fitness() > best_.fitness()) {
      throw std::logic_error("population member beats the incumbent best");
    }
  }
  if (accepted_ != evaluations_) throw std::logic_error("evaluation counter drifted");
  if (!is_feasible(*inst_, (*pop_)[last_replaced_].phenotype)) {
    throw std::logic_error("infeasible member stored");
  }
}

}  // namespace mkpwc
