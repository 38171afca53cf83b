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

#include "mkpwc/coding.hpp"

#include <algorithm>
#include <cmath>

namespace mkpwc {

namespace {

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

// Zero-denominator items sort below every finite ratio (which are >= 0),
// and among themselves by biased profit.
double fallback_key(double biased_profit) { return -1.0 / (1.0 + biased_profit); }

}  // namespace

// ---------------------------------------------------------------------------
// Phenotype

Phenotype::Phenotype(std::span<const std::uint8_t> x, double fitness)
    : words_((x.size() + 63) / 64, 0), items_(x.size()) {
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (x[j]) words_[j >> 6] |= std::uint64_t{1} << (j & 63);
  }
  finalize(fitness);
}

void Phenotype::finalize(double fitness) {
  fitness_ = fitness;
  std::uint64_t h = mix64(items_);
  for (std::uint64_t w : words_) h = mix64(h ^ w);
  hash_ = h;
}

std::vector<std::uint8_t> Phenotype::to_vector() const {
  std::vector<std::uint8_t> x(items_);
  for (std::size_t j = 0; j < items_; ++j) x[j] = selected(j) ? 1 : 0;
  return x;
}

std::size_t Phenotype::count() const {
  std::size_t c = 0;
  for (std::uint64_t w : words_) c += static_cast<std::size_t>(__builtin_popcountll(w));
  return c;
}

// ---------------------------------------------------------------------------
// Biasing

BiasConfig BiasConfig::lognormal(double gamma) {
  if (!(gamma > 0.0) || !std::isfinite(gamma)) {
    throw CodingError("log-normal biasing needs gamma > 0");
  }
  return {BiasScheme::lognormal, gamma, 0.0};
}

BiasConfig BiasConfig::uniform(const MkpInstance& inst) {
  return {BiasScheme::uniform, 0.0, inst.max_profit()};
}

double sample_weight(const BiasConfig& cfg, const MkpInstance& inst,
                     std::size_t j, Rng& rng) {
  if (cfg.scheme == BiasScheme::lognormal) {
    return std::exp(rng.normal() * std::log1p(cfg.gamma));
  }
  const double p_max = cfg.p_max > 0.0 ? cfg.p_max : inst.max_profit();
  return rng.uniform01() * (p_max / inst.profit(j));
}

std::vector<double> bias_profits(const MkpInstance& inst, const Genotype& g) {
  if (g.size() != inst.items()) throw CodingError("genotype length differs from n");
  std::vector<double> biased(inst.items());
  for (std::size_t j = 0; j < biased.size(); ++j) biased[j] = inst.profit(j) * g.weights[j];
  return biased;
}

std::vector<double> surrogate_weights(const MkpInstance& inst,
                                      const SurrogateMultipliers& a) {
  if (a.a.size() != inst.constraints()) {
    throw CodingError("multiplier count differs from m");
  }
  for (double ai : a.a) {
    if (!(ai >= 0.0) || !std::isfinite(ai)) throw CodingError("multipliers must be nonnegative");
  }
  std::vector<double> s(inst.items(), 0.0);
  for (std::size_t j = 0; j < inst.items(); ++j) {
    const auto column = inst.item_column(j);
    double total = 0.0;
    for (std::size_t i = 0; i < column.size(); ++i) total += a.a[i] * column[i];
    s[j] = total;
  }
  return s;
}

PseudoUtilities pseudo_utilities(std::span<const double> biased_profits,
                                 const MkpInstance& inst,
                                 const SurrogateMultipliers& a) {
  if (biased_profits.size() != inst.items()) {
    throw CodingError("profit vector length differs from n");
  }
  const std::vector<double> denom = surrogate_weights(inst, a);
  PseudoUtilities out;
  out.ratio.assign(inst.items(), 0.0);
  for (std::size_t j = 0; j < inst.items(); ++j) {
    if (denom[j] > 0.0) {
      out.ratio[j] = biased_profits[j] / denom[j];
    } else {
      out.zero_denominator.push_back(j);
    }
  }
  return out;
}

std::vector<double> utility_order_key(const PseudoUtilities& u,
                                      std::span<const double> biased_profits) {
  std::vector<double> key = u.ratio;
  for (std::size_t j : u.zero_denominator) key[j] = fallback_key(biased_profits[j]);
  return key;
}

// ---------------------------------------------------------------------------
// Decoding

Decoder::Decoder(const MkpInstance& inst, DecodeOrder order,
                 std::optional<SurrogateMultipliers> multipliers)
    : inst_(&inst), order_(order) {
  if (order == DecodeOrder::pseudo_utility) {
    if (!multipliers) throw CodingError("pseudo-utility decoding needs multipliers");
    surrogate_ = surrogate_weights(inst, *multipliers);
  }
  key_.resize(inst.items());
  order_buf_.resize(inst.items());
  residual_.resize(inst.constraints());
}

void Decoder::evaluate(const Genotype& g, Phenotype& out) {
  const std::size_t n = inst_->items();
  if (g.size() != n) throw CodingError("genotype length differs from n");
  const auto profits = inst_->profits();
  if (order_ == DecodeOrder::biased_profit) {
    for (std::size_t j = 0; j < n; ++j) key_[j] = profits[j] * g.weights[j];
  } else {
    for (std::size_t j = 0; j < n; ++j) {
      const double biased = profits[j] * g.weights[j];
      key_[j] = surrogate_[j] > 0.0 ? biased / surrogate_[j] : fallback_key(biased);
    }
  }
  decode(key_, out);
}

Phenotype Decoder::evaluate(const Genotype& g) {
  Phenotype out;
  evaluate(g, out);
  return out;
}

void Decoder::decode(std::span<const double> key, Phenotype& out) {
  const MkpInstance& inst = *inst_;
  const std::size_t n = inst.items();
  const std::size_t m = inst.constraints();
  if (key.size() != n) throw CodingError("decode key length differs from n");

  for (std::size_t j = 0; j < n; ++j) order_buf_[j] = {key[j], static_cast<std::uint32_t>(j)};
  std::sort(order_buf_.begin(), order_buf_.end(), [](const auto& a, const auto& b) {
    return a.first > b.first || (a.first == b.first && a.second < b.second);
  });

  out.items_ = n;
  out.words_.assign((n + 63) / 64, 0);
  const auto capacities = inst.capacities();
  std::copy(capacities.begin(), capacities.end(), residual_.begin());
  for (const auto& [ignored, j] : order_buf_) {
    const auto column = inst.item_column(j);
    bool fits = true;
    for (std::size_t i = 0; i < m; ++i) {
      if (column[i] > residual_[i]) {
        fits = false;
        break;
      }
    }
    if (!fits) continue;
    for (std::size_t i = 0; i < m; ++i) residual_[i] -= column[i];
    out.words_[j >> 6] |= std::uint64_t{1} << (j & 63);
  }
  out.finalize(objective_value(inst, out));
}

Phenotype first_fit_decode(const MkpInstance& inst, std::span<const double> key) {
  Decoder decoder(inst, DecodeOrder::biased_profit);
  Phenotype out;
  decoder.decode(key, out);
  return out;
}

Phenotype evaluate(const MkpInstance& inst, const Genotype& g, DecodeOrder order,
                   const std::optional<SurrogateMultipliers>& a) {
  Decoder decoder(inst, order, a);
  return decoder.evaluate(g);
}

double objective_value(const MkpInstance& inst, const Phenotype& x) {
  double total = 0.0;
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (x.selected(j)) total += inst.profit(j);
  }
  return total;
}

bool is_feasible(const MkpInstance& inst, const Phenotype& x) {
  for (std::size_t i = 0; i < inst.constraints(); ++i) {
    double used = 0.0;
    for (std::size_t j = 0; j < x.size(); ++j) {
      if (x.selected(j)) used += inst.consumption(i, j);
    }
    if (used > inst.capacity(i) * (1.0 + 1e-12) + 1e-9) return false;
  }
  return true;
}

bool is_maximal(const MkpInstance& inst, const Phenotype& x) {
  std::vector<double> residual(inst.capacities().begin(), inst.capacities().end());
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (!x.selected(j)) continue;
    for (std::size_t i = 0; i < inst.constraints(); ++i) residual[i] -= inst.consumption(i, j);
  }
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (x.selected(j)) continue;
    bool fits = true;
    const auto column = inst.item_column(j);
    for (std::size_t i = 0; i < column.size() && fits; ++i) {
      fits = column[i] <= residual[i];
    }
    if (fits) return false;
  }
  return true;
}

}  // namespace mkpwc
