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

#ifndef MKPWC_CODING_HPP
#define MKPWC_CODING_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "mkpwc/instance.hpp"
#include "mkpwc/rng.hpp"

namespace mkpwc {

// Real-valued weight per item; the decoder sees profits p_j * w_j.
struct Genotype {
  std::vector<double> weights;

  std::size_t size() const { return weights.size(); }
  friend bool operator==(const Genotype&, const Genotype&) = default;
};

// A decoded 0/1 solution. Bits are packed 64 per word; the hash is a digest
// of the packed words and equality always compares the full bit vector.
class Phenotype {
 public:
  Phenotype() = default;
  Phenotype(std::span<const std::uint8_t> x, double fitness);

  std::size_t size() const { return items_; }
  bool selected(std::size_t j) const { return (words_[j >> 6] >> (j & 63)) & 1u; }
  double fitness() const { return fitness_; }
  std::uint64_t hash() const { return hash_; }
  std::vector<std::uint8_t> to_vector() const;
  std::size_t count() const;
  // Bit-vector comparison that ignores the cached hash.
  bool same_bits(const Phenotype& other) const {
    return items_ == other.items_ && words_ == other.words_;
  }

  friend bool operator==(const Phenotype& a, const Phenotype& b) {
    return a.hash_ == b.hash_ && a.items_ == b.items_ && a.words_ == b.words_;
  }

 private:
  friend class Decoder;
  void finalize(double fitness);

  std::vector<std::uint64_t> words_;
  std::size_t items_ = 0;
  double fitness_ = 0.0;
  std::uint64_t hash_ = 0;
};

enum class BiasScheme {
  // w = (1+gamma)^N(0,1)
  lognormal,
  // w ~ U[0, p_max / p_j]
  uniform,
};

struct BiasConfig {
  BiasScheme scheme = BiasScheme::uniform;
  double gamma = 0.05;
  double p_max = 0.0;

  static BiasConfig lognormal(double gamma);
  static BiasConfig uniform(const MkpInstance& inst);
};

// Nonnegative weights a_i aggregating the m constraints into one.
struct SurrogateMultipliers {
  std::vector<double> a;
};

class CodingError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

double sample_weight(const BiasConfig& cfg, const MkpInstance& inst,
                     std::size_t j, Rng& rng);

// p'_j = p_j * w_j
std::vector<double> bias_profits(const MkpInstance& inst, const Genotype& g);

// u_j = p'_j / sum_i a_i r_ij. Items whose denominator is zero get no
// ratio; `zero_denominator` lists them.
struct PseudoUtilities {
  std::vector<double> ratio;
  std::vector<std::size_t> zero_denominator;

  bool degenerate() const { return !zero_denominator.empty(); }
};

// sum_i a_i r_ij for every item j.
std::vector<double> surrogate_weights(const MkpInstance& inst,
                                      const SurrogateMultipliers& a);

PseudoUtilities pseudo_utilities(std::span<const double> biased_profits,
                                 const MkpInstance& inst,
                                 const SurrogateMultipliers& a);

// Decode key from pseudo-utilities: items with a ratio come first (by
// ratio), items with a zero denominator after them ordered by p'_j.
std::vector<double> utility_order_key(const PseudoUtilities& u,
                                      std::span<const double> biased_profits);

// First-fit: visit items by descending key (ties: lower index first) and
// take each one that still fits every constraint. Fitness uses the
// unbiased profits.
Phenotype first_fit_decode(const MkpInstance& inst, std::span<const double> key);

// Which decode key the evaluator builds from the biased profits.
enum class DecodeOrder {
  // Sort by pseudo-utility ratio under surrogate multipliers.
  pseudo_utility,
  // Sort by the biased profits themselves.
  biased_profit,
};

// Reusable decoding workspace; evaluation in the EA inner loop goes through
// one of these to avoid per-call allocation. Not thread-safe; use one per
// thread.
class Decoder {
 public:
  // `multipliers` is required for DecodeOrder::pseudo_utility and ignored
  // otherwise. Throws CodingError when the multipliers do not match the
  // instance or are negative.
  Decoder(const MkpInstance& inst, DecodeOrder order,
          std::optional<SurrogateMultipliers> multipliers = std::nullopt);

  const MkpInstance& instance() const { return *inst_; }
  DecodeOrder order() const { return order_; }

  // bias -> key -> first-fit, writing into `out`.
  void evaluate(const Genotype& g, Phenotype& out);
  Phenotype evaluate(const Genotype& g);

  // First-fit over an explicit key.
  void decode(std::span<const double> key, Phenotype& out);

 private:
  const MkpInstance* inst_;
  DecodeOrder order_;
  std::vector<double> surrogate_;   // sum_i a_i r_ij, pseudo_utility only
  std::vector<double> key_;
  std::vector<std::pair<double, std::uint32_t>> order_buf_;
  std::vector<double> residual_;
};

// Convenience wrapper around Decoder for one-off evaluation.
Phenotype evaluate(const MkpInstance& inst, const Genotype& g, DecodeOrder order,
                   const std::optional<SurrogateMultipliers>& a = std::nullopt);

// Sum of p_j x_j recomputed from scratch, and a constraint check.
double objective_value(const MkpInstance& inst, const Phenotype& x);
bool is_feasible(const MkpInstance& inst, const Phenotype& x);
// True when no unselected item fits into the residual capacities.
bool is_maximal(const MkpInstance& inst, const Phenotype& x);

}  // namespace mkpwc

#endif  // MKPWC_CODING_HPP
