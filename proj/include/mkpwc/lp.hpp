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

#ifndef MKPWC_LP_HPP
#define MKPWC_LP_HPP

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "mkpwc/instance.hpp"

namespace mkpwc::lp {

enum class Sense { maximize, minimize };
enum class RowSense { less_equal, greater_equal };

struct Row {
  std::vector<double> coefficients;
  RowSense sense = RowSense::less_equal;
  double rhs = 0.0;
};

struct EqualityRow {
  std::vector<double> coefficients;
  double rhs = 0.0;
};

// Dense LP over x in [0,1]^n with inequality rows and at most one equality
// row. Every row must have exactly `objective.size()` coefficients.
struct LinearProgram {
  Sense sense = Sense::maximize;
  std::vector<double> objective;
  std::vector<Row> rows;
  std::optional<EqualityRow> equality;

  std::size_t variables() const { return objective.size(); }
  // Inequality rows first, then the equality row if present.
  std::size_t row_count() const { return rows.size() + (equality ? 1 : 0); }
};

enum class Status { optimal, infeasible, unbounded };
const char* to_string(Status status);

struct LpSolution {
  Status status = Status::infeasible;
  std::vector<double> x;
  double objective = 0.0;
  // One per row, ordered like LinearProgram::row_count(). dual_i is the rate
  // of change of the optimal objective (in the problem's own sense) per unit
  // increase of rhs_i; >= 0 for <= rows of a maximization.
  std::vector<double> duals;
  // c_j - sum_i dual_i a_ij. At optimality a variable at its upper bound has
  // a reduced cost favouring the objective, one at zero does not.
  std::vector<double> reduced_costs;
  std::size_t iterations = 0;

  bool optimal() const { return status == Status::optimal; }
};

class LpError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SolverOptions {
  double feasibility_tol = 1e-9;
  double optimality_tol = 1e-9;
  double pivot_tol = 1e-11;
  // Basis inverse is recomputed from scratch this often.
  std::size_t refactor_interval = 50;
  std::size_t max_iterations = 1'000'000;
};

// Bounded-variable primal simplex (two phases). Dantzig pricing, falling back
// to Bland's rule after 5*(rows+n) consecutive degenerate pivots; ties go to
// the lowest index. Throws LpError on malformed input or numerical failure.
LpSolution solve(const LinearProgram& lp, const SolverOptions& options = {});

// max p.x s.t. r x <= b, x in [0,1]^n.
LinearProgram relax_mkp(const MkpInstance& inst);

// Adds sum_j x_j = k. Throws LpError if an equality row already exists.
LinearProgram with_hyperplane(LinearProgram lp, double k);

// Optimizes sum_j x_j (in the given sense) subject to the knapsack rows and
// the profit cut p.x >= z + 1.
LinearProgram bounds_lp(const MkpInstance& inst, double z, Sense sense);

// Largest violation of rows and bounds by x (0 when feasible).
double max_violation(const LinearProgram& lp, const std::vector<double>& x);

}  // namespace mkpwc::lp

#endif  // MKPWC_LP_HPP
