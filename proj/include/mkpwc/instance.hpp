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

#ifndef MKPWC_INSTANCE_HPP
#define MKPWC_INSTANCE_HPP

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace mkpwc {

// A 0-1 multidimensional knapsack instance:
//   max p.x  s.t.  r x <= b,  x in {0,1}^n.
// Immutable once constructed. Consumption is kept twice: constraint-major as
// read from the file, and item-major for the decoder's per-item feasibility
// test.
class MkpInstance {
 public:
  // `consumption` is m*n values, constraint-major (row i holds r_i1..r_in).
  // Throws std::invalid_argument on dimension mismatch, n or m of zero, or
  // non-finite / negative data.
  MkpInstance(std::string name, std::vector<double> profits,
              std::vector<double> consumption, std::vector<double> capacities,
              std::optional<double> known_best = std::nullopt);

  std::size_t items() const { return profits_.size(); }
  std::size_t constraints() const { return capacities_.size(); }

  const std::string& name() const { return name_; }
  std::optional<double> known_best() const { return known_best_; }

  std::span<const double> profits() const { return profits_; }
  std::span<const double> capacities() const { return capacities_; }
  double profit(std::size_t j) const { return profits_[j]; }
  double capacity(std::size_t i) const { return capacities_[i]; }
  double consumption(std::size_t i, std::size_t j) const {
    return by_constraint_[i * items() + j];
  }
  // r_i1..r_in
  std::span<const double> constraint_row(std::size_t i) const {
    return {by_constraint_.data() + i * items(), items()};
  }
  // r_1j..r_mj
  std::span<const double> item_column(std::size_t j) const {
    return {by_item_.data() + j * constraints(), constraints()};
  }
  double max_profit() const { return max_profit_; }

  MkpInstance with_name(std::string name) const;
  MkpInstance with_known_best(std::optional<double> known_best) const;

  friend bool operator==(const MkpInstance&, const MkpInstance&) = default;

 private:
  std::string name_;
  std::vector<double> profits_;
  std::vector<double> by_constraint_;
  std::vector<double> by_item_;
  std::vector<double> capacities_;
  std::optional<double> known_best_;
  double max_profit_ = 0.0;
};

// ---------------------------------------------------------------------------
// OR-Library text format

enum class OrlibLayout {
  // Leading instance count K, then K blocks (mknapcb*.txt).
  multi,
  // A single block with no leading count.
  single,
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t token_index)
      : std::runtime_error(what + " (token " + std::to_string(token_index) +
                           ")"),
        token_index_(token_index) {}
  std::size_t token_index() const { return token_index_; }

 private:
  std::size_t token_index_;
};

// Block layout: n m opt, n profits, m*n consumptions (constraint-major),
// m capacities. An opt token of 0 means "unknown". Instances are named
// "<name_prefix>.<ordinal>" when a prefix is given, else by ordinal.
std::vector<MkpInstance> parse_orlib(std::istream& in,
                                     OrlibLayout layout = OrlibLayout::multi,
                                     const std::string& name_prefix = "");
std::vector<MkpInstance> parse_orlib(const std::string& text,
                                     OrlibLayout layout = OrlibLayout::multi,
                                     const std::string& name_prefix = "");
// Reads a file; the name prefix is the file stem. Throws ParseError, or
// std::runtime_error when the file cannot be opened.
std::vector<MkpInstance> load_orlib_file(const std::string& path,
                                         OrlibLayout layout = OrlibLayout::multi);

// Inverse of parse_orlib. Integral values are written without a fraction;
// others use the shortest round-trip representation.
void write_orlib(std::ostream& out, std::span<const MkpInstance> instances,
                 OrlibLayout layout = OrlibLayout::multi);
std::string to_orlib(std::span<const MkpInstance> instances,
                     OrlibLayout layout = OrlibLayout::multi);

// ---------------------------------------------------------------------------
// Well-statedness

enum class ViolationKind { nonpositive_profit, item_exceeds_capacity, slack_constraint };

const char* to_string(ViolationKind kind);

struct Violation {
  ViolationKind kind;
  // -1 when the violation is not tied to a constraint / item.
  std::ptrdiff_t constraint = -1;
  std::ptrdiff_t item = -1;

  friend bool operator==(const Violation&, const Violation&) = default;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool well_stated() const { return violations.empty(); }
  std::string describe() const;
};

// Checks p_j > 0, r_ij <= b_i, and b_i < sum_j r_ij.
ValidationReport validate(const MkpInstance& inst);

// Reduction of an ill-stated instance to a well-stated one: slack
// constraints are dropped and items that cannot be chosen (nonpositive
// profit, or larger than some capacity) are fixed to zero.
struct Preprocessed {
  MkpInstance reduced;
  std::vector<std::size_t> kept_items;         // reduced index -> original
  std::vector<std::size_t> fixed_zero_items;   // original indices
  std::vector<std::size_t> dropped_constraints;

  // Maps a reduced-space 0/1 vector back to the original item space.
  std::vector<std::uint8_t> expand(std::span<const std::uint8_t> reduced_x,
                                   std::size_t original_items) const;
};

// Throws std::invalid_argument when nothing is left to optimize (every item
// fixed or every constraint slack). Fixing items may make more constraints
// slack, so the rules are applied until the instance stops changing.
Preprocessed preprocess(const MkpInstance& inst);

// ---------------------------------------------------------------------------
// Random instances

struct GeneratorOptions {
  std::size_t items = 100;
  std::size_t constraints = 5;
  double tightness = 0.5;  // alpha in (0,1): b_i = alpha * sum_j r_ij
  double profit_min = 1.0;
  double profit_max = 1000.0;
  double consumption_min = 0.0;
  double consumption_max = 1000.0;
  // Draw integers from the ranges instead of reals.
  bool integral = true;
  // Chu-Beasley correlation: p_j = sum_i r_ij / m + profit_max * U(0,1),
  // ignoring profit_min.
  bool correlated = false;
  std::uint64_t seed = 1;
};

// Deterministic per options. Items that exceed a capacity (or would make a
// profit of zero) are redrawn until the instance is well-stated.
MkpInstance generate_random(const GeneratorOptions& options);

}  // namespace mkpwc

#endif  // MKPWC_INSTANCE_HPP
