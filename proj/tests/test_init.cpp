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

#include <doctest.h>

#include <cmath>

#include "mkpwc/bench.hpp"
#include "mkpwc/init.hpp"
#include "mkpwc/lp.hpp"
#include "support/oracles.hpp"

using namespace mkpwc;
using testing::five_item_instance;

TEST_CASE("greedy lower bound") {
  const GreedyBound g = greedy_lower_bound(five_item_instance());
  CHECK(g.z == 24.0);
  CHECK(g.solution.to_vector() == std::vector<std::uint8_t>{1, 1, 0, 0, 0});
  CHECK(g.multipliers.a[0] == doctest::Approx(0.9).epsilon(1e-12));
  CHECK(greedy_lower_bound(MkpInstance("one", {7}, {2}, {2})).z == 7.0);

  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    GeneratorOptions opt;
    opt.items = 8 + seed % 11;
    opt.constraints = 1 + seed % 5;
    opt.consumption_max = 100;
    opt.profit_max = 100;
    opt.seed = seed;
    const MkpInstance inst = generate_random(opt);
    CHECK(greedy_lower_bound(inst).z <= testing::naive_binary_optimum(inst));
  }
}

TEST_CASE("bounds on the number of selected items") {
  const MkpInstance inst = five_item_instance();
  const InitBounds b = compute_bounds(inst, 24.0);
  REQUIRE(b.status == BoundsStatus::ok);
  CHECK(std::fabs(b.k_max - 3.0) <= 1e-9);
  CHECK(std::fabs(b.k_min - 19.0 / 9.0) <= 1e-9);

  // Optimum equals the LP bound, so no point improves on z by one.
  const MkpInstance tight("tight", {4, 4}, {1, 1}, {1});
  const GreedyBound g = greedy_lower_bound(tight);
  CHECK(g.z == 4.0);
  CHECK(compute_bounds(tight, g.z).status == BoundsStatus::cut_infeasible);

  for (std::uint64_t seed = 1; seed <= 15; ++seed) {
    GeneratorOptions opt;
    opt.items = 60;
    opt.seed = seed;
    const MkpInstance r = generate_random(opt);
    const InitBounds rb = compute_bounds(r, greedy_lower_bound(r).z);
    if (rb.status != BoundsStatus::ok) continue;
    CHECK(rb.k_min >= -1e-9);
    CHECK(rb.k_max <= 60 + 1e-9);
    CHECK(rb.k_min <= rb.k_max + 1e-9);
  }
}

TEST_CASE("hyperplane seeds") {
  const MkpInstance inst = five_item_instance();
  const Genotype at3 = hyperplane_seed(inst, 3.0);
  const std::vector<double> expect3{0, 0, 1, 1, 1};
  for (std::size_t j = 0; j < 5; ++j) CHECK(std::fabs(at3.weights[j] - expect3[j]) <= 1e-9);
  CHECK(evaluate(inst, at3, DecodeOrder::biased_profit).fitness() == 25.0);

  const Genotype at_min = hyperplane_seed(inst, 19.0 / 9.0);
  const std::vector<double> expect_min{1, 1, 1.0 / 9.0, 0, 0};
  for (std::size_t j = 0; j < 5; ++j) CHECK(std::fabs(at_min.weights[j] - expect_min[j]) <= 1e-9);
  CHECK_THROWS_AS(hyperplane_seed(inst, 6.0), lp::LpError);
}

TEST_CASE("LP-seeded populations") {
  GeneratorOptions opt;
  opt.items = 80;
  opt.correlated = true;
  opt.seed = 4;
  const MkpInstance inst = generate_random(opt);
  const GreedyBound g = greedy_lower_bound(inst);
  const InitBounds b = compute_bounds(inst, g.z);
  REQUIRE(b.status == BoundsStatus::ok);
  Rng r1(9), r2(9);
  const auto seeds = lp_seed_population(inst, b, 12, r1);
  CHECK(seeds == lp_seed_population(inst, b, 12, r2));
  REQUIRE(seeds.size() == 12);
  double best = 0.0;
  for (const auto& s : seeds) {
    double sum = 0.0;
    for (double w : s.weights) {
      CHECK(w >= -1e-9);
      CHECK(w <= 1.0 + 1e-9);
      sum += w;
    }
    CHECK(sum >= b.k_min - 1e-7);
    CHECK(sum <= b.k_max + 1e-7);
    const Phenotype x = evaluate(inst, s, DecodeOrder::biased_profit);
    CHECK(is_feasible(inst, x));
    best = std::max(best, x.fitness());
  }
  CHECK(best >= g.z);
}

TEST_CASE("random populations") {
  const MkpInstance inst = five_item_instance();
  Rng rng(31);
  const auto pop = random_population(inst, 20000, BiasConfig::lognormal(0.05), rng);
  double sum = 0.0, sq = 0.0, count = 0.0;
  for (const auto& g : pop) {
    for (double w : g.weights) {
      const double l = std::log(w);
      sum += l;
      sq += l * l;
      count += 1;
    }
  }
  const double mean = sum / count;
  const double sd = std::sqrt(sq / count - mean * mean);
  CHECK(std::fabs(mean) <= 0.01);
  CHECK(std::fabs(sd / std::log(1.05) - 1.0) <= 0.05);

  const BiasConfig uni = BiasConfig::uniform(inst);
  Rng a(1), b(1);
  const auto ua = random_population(inst, 50, uni, a);
  CHECK(ua == random_population(inst, 50, uni, b));
  for (const auto& g : ua) {
    for (std::size_t j = 0; j < 5; ++j) {
      CHECK(g.weights[j] >= 0.0);
      CHECK(g.weights[j] <= 12.0 / inst.profit(j));
    }
  }
}

TEST_CASE("initial population dispatch") {
  const MkpInstance inst = five_item_instance();
  EaConfig iw = EaConfig::iwcea(inst);
  iw.pop_size = 6;
  Rng rng(2);
  const InitialPopulation p = build_initial_population(inst, iw, 24.0, rng);
  CHECK(p.genotypes.size() == 6);
  REQUIRE(p.bounds);
  CHECK_FALSE(p.fell_back);
  CHECK(p.best_seed_fitness >= 24.0);

  const MkpInstance tight("tight", {4, 4}, {1, 1}, {1});
  EaConfig tw = EaConfig::iwcea(tight);
  tw.pop_size = 2;
  const InitialPopulation fallback = build_initial_population(tight, tw, 4.0, rng);
  CHECK(fallback.fell_back);
  CHECK(fallback.genotypes.size() == 2);

  EaConfig wc = EaConfig::wcea(inst, 0.05);
  wc.pop_size = 5;
  const InitialPopulation w = build_initial_population(inst, wc, 24.0, rng);
  CHECK_FALSE(w.bounds);
  CHECK(w.genotypes.size() == 5);
}
