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

#include <array>
#include <cmath>
#include <sstream>

#include "mkpwc/instance.hpp"
#include "support/oracles.hpp"

using namespace mkpwc;

TEST_CASE("parse a minimal mknapcb stream") {
  const auto out = parse_orlib("1  2 1 0  10 7  3 4  5");
  REQUIRE(out.size() == 1);
  const MkpInstance& inst = out[0];
  CHECK(inst.items() == 2);
  CHECK(inst.constraints() == 1);
  CHECK(inst.profit(0) == 10);
  CHECK(inst.profit(1) == 7);
  CHECK(inst.consumption(0, 0) == 3);
  CHECK(inst.consumption(0, 1) == 4);
  CHECK(inst.capacity(0) == 5);
  CHECK_FALSE(inst.known_best().has_value());
}

TEST_CASE("parse the five-item example") {
  const auto out = parse_orlib("1 5 1 0 12 12 9 8 8 11 12 10 10 10 30");
  REQUIRE(out.size() == 1);
  CHECK(out[0].with_name("five-item") == testing::five_item_instance());
}

TEST_CASE("constraint-major consumption and multiple instances") {
  const auto out = parse_orlib("2\n3 2 17\n1 2 3\n4 5 6\n7 8 9\n10 11\n1 1 0\n5\n2\n3\n", OrlibLayout::multi,
                               "demo");
  REQUIRE(out.size() == 2);
  CHECK(out[0].consumption(1, 0) == 7);
  CHECK(out[0].consumption(0, 2) == 6);
  CHECK(out[0].item_column(2)[1] == 9);
  CHECK(out[0].known_best() == 17.0);
  CHECK(out[0].name() == "demo.0");
  CHECK(out[1].name() == "demo.1");
  CHECK(out[1].capacity(0) == 3);
}

TEST_CASE("single layout has no leading count") {
  const auto out = parse_orlib("2 1 9 10 7 3 4 5", OrlibLayout::single);
  REQUIRE(out.size() == 1);
  CHECK(out[0].known_best() == 9.0);
}

TEST_CASE("parse errors carry the token position") {
  SUBCASE("truncated stream") {
    try {
      parse_orlib("1 2 1 0 10 7 3 4");
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.token_index() == 9);
      CHECK(std::string(e.what()).find("truncated") != std::string::npos);
    }
  }
  SUBCASE("non-numeric token") {
    try {
      parse_orlib("1 2 1 0 10 x 3 4 5");
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.token_index() == 6);
    }
  }
  SUBCASE("nonpositive dimensions") {
    CHECK_THROWS_AS(parse_orlib("1 0 1 0 5"), ParseError);
    CHECK_THROWS_AS(parse_orlib("1 2 -1 0"), ParseError);
    CHECK_THROWS_AS(parse_orlib("1 2.5 1 0"), ParseError);
  }
  SUBCASE("leftover tokens") {
    try {
      parse_orlib("1 2 1 0 10 7 3 4 5 6");
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.token_index() == 10);
    }
  }
  SUBCASE("negative consumption") { CHECK_THROWS_AS(parse_orlib("1 2 1 0 10 7 -3 4 5"), ParseError); }
}

TEST_CASE("serialize then parse reproduces every field") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    GeneratorOptions opt;
    opt.items = 5 + seed;
    opt.constraints = 1 + seed % 4;
    opt.tightness = 0.25 + 0.02 * static_cast<double>(seed);
    opt.integral = seed % 2 == 0;
    opt.seed = seed;
    const MkpInstance a = generate_random(opt).with_known_best(seed % 3 ? std::optional(123.0) : std::nullopt);
    const MkpInstance b = generate_random(opt);
    const std::vector<MkpInstance> both{a, b};
    const auto back = parse_orlib(to_orlib(both));
    REQUIRE(back.size() == 2);
    CHECK(back[0].with_name(a.name()) == a);
    CHECK(back[1].with_name(b.name()) == b);
  }
}

TEST_CASE("validate") {
  CHECK(validate(testing::five_item_instance()).well_stated());

  const auto zero_profit = validate(MkpInstance("p", {0, 5}, {1, 1}, {1.5}));
  REQUIRE(zero_profit.violations.size() == 1);
  CHECK(zero_profit.violations[0] == Violation{ViolationKind::nonpositive_profit, -1, 0});

  const auto too_big = validate(MkpInstance("r", {1, 1}, {6, 1}, {5}));
  REQUIRE(too_big.violations.size() == 1);
  CHECK(too_big.violations[0] == Violation{ViolationKind::item_exceeds_capacity, 0, 0});

  const auto slack = validate(MkpInstance("s", {1, 1}, {1, 1, 2, 2}, {5, 3}));
  REQUIRE(slack.violations.size() == 1);
  CHECK(slack.violations[0] == Violation{ViolationKind::slack_constraint, 0, -1});
  CHECK_FALSE(slack.describe().empty());
}

TEST_CASE("preprocess reduces an ill-stated instance") {
  // Item 1 is too large for constraint 1; constraint 0 becomes slack once
  // item 1 is gone.
  const MkpInstance inst("pp", {4, 9, 3, 2},
                         {1, 10, 1, 1,   //
                          2, 20, 2, 3},  //
                         {5, 4});
  const Preprocessed out = preprocess(inst);
  CHECK(out.fixed_zero_items == std::vector<std::size_t>{1});
  CHECK(out.dropped_constraints == std::vector<std::size_t>{0});
  CHECK(out.kept_items == std::vector<std::size_t>{0, 2, 3});
  CHECK(validate(out.reduced).well_stated());
  CHECK(out.reduced.items() == 3);
  CHECK(out.reduced.constraints() == 1);
  const std::vector<std::uint8_t> reduced_x{1, 0, 1};
  CHECK(out.expand(reduced_x, 4) == std::vector<std::uint8_t>{1, 0, 0, 1});

  CHECK_THROWS_AS(preprocess(MkpInstance("all-slack", {1, 1}, {1, 1}, {5})), std::invalid_argument);
}

TEST_CASE("generate_random") {
  GeneratorOptions opt;
  opt.items = 100;
  opt.constraints = 5;
  opt.tightness = 0.5;
  for (std::uint64_t seed = 1; seed <= 25; ++seed) {
    opt.seed = seed;
    opt.tightness = std::array{0.25, 0.5, 0.75}[seed % 3];
    const MkpInstance inst = generate_random(opt);
    for (std::size_t i = 0; i < inst.constraints(); ++i) {
      double total = 0.0;
      for (double r : inst.constraint_row(i)) total += r;
      CHECK(std::fabs(inst.capacity(i) / total - opt.tightness) <= 1e-12);
    }
    CHECK(validate(inst).well_stated());
    CHECK(inst == generate_random(opt));
  }

  opt.correlated = true;
  opt.profit_max = 500;
  const MkpInstance cb = generate_random(opt);
  CHECK(validate(cb).well_stated());
  for (std::size_t j = 0; j < cb.items(); ++j) {
    double mean = 0.0;
    for (double r : cb.item_column(j)) mean += r / 5.0;
    CHECK(cb.profit(j) >= std::floor(mean));
    CHECK(cb.profit(j) <= mean + 500.0);
  }

  GeneratorOptions bad = opt;
  bad.tightness = 0.0;
  CHECK_THROWS_AS(generate_random(bad), std::invalid_argument);
  bad.tightness = 1.0;
  CHECK_THROWS_AS(generate_random(bad), std::invalid_argument);
  bad = opt;
  bad.consumption_min = 10;
  bad.consumption_max = 5;
  CHECK_THROWS_AS(generate_random(bad), std::invalid_argument);
}

TEST_CASE("constructor rejects malformed data") {
  CHECK_THROWS_AS(MkpInstance("x", {}, {}, {1}), std::invalid_argument);
  CHECK_THROWS_AS(MkpInstance("x", {1}, {1}, {}), std::invalid_argument);
  CHECK_THROWS_AS(MkpInstance("x", {1, 2}, {1}, {1}), std::invalid_argument);
  CHECK_THROWS_AS(MkpInstance("x", {1}, {NAN}, {1}), std::invalid_argument);
  CHECK_THROWS_AS(load_orlib_file("/nonexistent/file.txt"), std::runtime_error);
}
