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

#include "mkpwc/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace mkpwc::lp {

const char* to_string(Status status) {
  switch (status) {
    case Status::optimal: return "optimal";
    case Status::infeasible: return "infeasible";
    case Status::unbounded: return "unbounded";
  }
  return "unknown";
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Internal form: maximize cost.x subject to
//   A x + s = rhs   (one slack per row, e_i column)
// with x in [0,1], slack in [0,inf) for inequalities, [0,0] for the equality
// row, and >= rows negated. Artificial columns (+-e_i) are appended for rows
// whose slack cannot absorb the initial residual.
class BoundedSimplex {
 public:
  BoundedSimplex(const LinearProgram& lp, const SolverOptions& options)
      : opt_(options),
        n_(lp.variables()),
        rows_(lp.row_count()),
        dense_(rows_ * n_),
        rhs_(rows_),
        orientation_(rows_, 1.0) {
    for (std::size_t i = 0; i < lp.rows.size(); ++i) {
      const Row& row = lp.rows[i];
      orientation_[i] = row.sense == RowSense::less_equal ? 1.0 : -1.0;
      for (std::size_t j = 0; j < n_; ++j) {
        dense_[i * n_ + j] = orientation_[i] * row.coefficients[j];
      }
      rhs_[i] = orientation_[i] * row.rhs;
    }
    if (lp.equality) {
      const std::size_t i = lp.rows.size();
      std::copy(lp.equality->coefficients.begin(), lp.equality->coefficients.end(),
                dense_.begin() + static_cast<std::ptrdiff_t>(i * n_));
      rhs_[i] = lp.equality->rhs;
    }
    objective_sign_ = lp.sense == Sense::maximize ? 1.0 : -1.0;
    true_cost_.resize(n_);
    for (std::size_t j = 0; j < n_; ++j) {
      true_cost_[j] = objective_sign_ * lp.objective[j];
    }
    equality_row_ = lp.equality ? static_cast<std::ptrdiff_t>(lp.rows.size()) : -1;
  }

  LpSolution run() {
    setup_initial_basis();
    LpSolution solution;
    if (!artificial_rows_.empty()) {
      std::vector<double> phase1(columns(), 0.0);
      for (std::size_t a = 0; a < artificial_rows_.size(); ++a) {
        phase1[n_ + rows_ + a] = -1.0;
      }
      if (iterate(phase1) == Status::unbounded) {
        throw LpError("phase 1 reported unbounded");
      }
      refactor();
      double infeasibility = 0.0;
      for (std::size_t a = 0; a < artificial_rows_.size(); ++a) {
        infeasibility += value_[n_ + rows_ + a];
      }
      double scale = 1.0;
      for (double r : rhs_) scale = std::max(scale, std::fabs(r));
      if (infeasibility > opt_.feasibility_tol * scale) {
        solution.status = Status::infeasible;
        solution.iterations = iterations_;
        return solution;
      }
      drive_out_artificials();
    }

    std::vector<double> cost(columns(), 0.0);
    std::copy(true_cost_.begin(), true_cost_.end(), cost.begin());
    const Status status = iterate(cost);
    solution.iterations = iterations_;
    if (status == Status::unbounded) {
      solution.status = Status::unbounded;
      return solution;
    }
    refactor();
    extract(cost, solution);
    return solution;
  }

 private:
  std::size_t columns() const { return n_ + rows_ + artificial_rows_.size(); }

  bool is_artificial(std::size_t col) const { return col >= n_ + rows_; }

  // A_col[i]
  double entry(std::size_t i, std::size_t col) const {
    if (col < n_) return dense_[i * n_ + col];
    if (col < n_ + rows_) return col - n_ == i ? 1.0 : 0.0;
    const std::size_t a = col - n_ - rows_;
    return artificial_rows_[a] == i ? artificial_sign_[a] : 0.0;
  }

  void setup_initial_basis() {
    const std::size_t slack0 = n_;
    lower_.assign(n_ + rows_, 0.0);
    upper_.assign(n_ + rows_, kInf);
    std::fill(upper_.begin(), upper_.begin() + static_cast<std::ptrdiff_t>(n_), 1.0);
    if (equality_row_ >= 0) upper_[slack0 + static_cast<std::size_t>(equality_row_)] = 0.0;

    basis_.assign(rows_, 0);
    std::vector<double> diag(rows_, 1.0);
    for (std::size_t i = 0; i < rows_; ++i) {
      const std::size_t slack = slack0 + i;
      const bool fits = rhs_[i] >= lower_[slack] - opt_.feasibility_tol &&
                        rhs_[i] <= upper_[slack] + opt_.feasibility_tol;
      if (fits) {
        basis_[i] = slack;
      } else {
        artificial_rows_.push_back(i);
        artificial_sign_.push_back(rhs_[i] >= 0.0 ? 1.0 : -1.0);
        diag[i] = artificial_sign_.back();
      }
    }
    for (std::size_t a = 0; a < artificial_rows_.size(); ++a) {
      basis_[artificial_rows_[a]] = n_ + rows_ + a;
      lower_.push_back(0.0);
      upper_.push_back(kInf);
    }

    value_.assign(columns(), 0.0);
    at_upper_.assign(columns(), false);
    position_.assign(columns(), -1);
    for (std::size_t i = 0; i < rows_; ++i) {
      position_[basis_[i]] = static_cast<std::ptrdiff_t>(i);
    }
    binv_.assign(rows_ * rows_, 0.0);
    for (std::size_t i = 0; i < rows_; ++i) binv_[i * rows_ + i] = 1.0 / diag[i];
    recompute_basic_values();
  }

  // x_B = B^-1 (rhs - N x_N)
  void recompute_basic_values() {
    std::vector<double> residual = rhs_;
    for (std::size_t col = 0; col < columns(); ++col) {
      if (position_[col] >= 0 || value_[col] == 0.0) continue;
      for (std::size_t i = 0; i < rows_; ++i) residual[i] -= entry(i, col) * value_[col];
    }
    for (std::size_t k = 0; k < rows_; ++k) {
      double v = 0.0;
      for (std::size_t i = 0; i < rows_; ++i) v += binv_[k * rows_ + i] * residual[i];
      value_[basis_[k]] = v;
    }
  }

  // Gauss-Jordan inversion of the current basis with partial pivoting.
  void refactor() {
    const std::size_t r = rows_;
    std::vector<double> work(r * 2 * r, 0.0);
    for (std::size_t i = 0; i < r; ++i) {
      for (std::size_t k = 0; k < r; ++k) work[i * 2 * r + k] = entry(i, basis_[k]);
      work[i * 2 * r + r + i] = 1.0;
    }
    for (std::size_t c = 0; c < r; ++c) {
      std::size_t pivot = c;
      for (std::size_t i = c + 1; i < r; ++i) {
        if (std::fabs(work[i * 2 * r + c]) > std::fabs(work[pivot * 2 * r + c])) pivot = i;
      }
      const double p = work[pivot * 2 * r + c];
      if (std::fabs(p) < opt_.pivot_tol) throw LpError("singular basis during refactorization");
      if (pivot != c) {
        for (std::size_t k = 0; k < 2 * r; ++k) {
          std::swap(work[pivot * 2 * r + k], work[c * 2 * r + k]);
        }
      }
      for (std::size_t k = 0; k < 2 * r; ++k) work[c * 2 * r + k] /= p;
      for (std::size_t i = 0; i < r; ++i) {
        if (i == c) continue;
        const double f = work[i * 2 * r + c];
        if (f == 0.0) continue;
        for (std::size_t k = 0; k < 2 * r; ++k) work[i * 2 * r + k] -= f * work[c * 2 * r + k];
      }
    }
    // Row k of the inverse maps to basis position k.
    for (std::size_t k = 0; k < r; ++k) {
      for (std::size_t i = 0; i < r; ++i) binv_[k * r + i] = work[k * 2 * r + r + i];
    }
    recompute_basic_values();
    pivots_since_refactor_ = 0;
  }

  std::vector<double> duals_for(const std::vector<double>& cost) const {
    std::vector<double> y(rows_, 0.0);
    for (std::size_t k = 0; k < rows_; ++k) {
      const double cb = cost[basis_[k]];
      if (cb == 0.0) continue;
      for (std::size_t i = 0; i < rows_; ++i) y[i] += cb * binv_[k * rows_ + i];
    }
    return y;
  }

  // Reduced costs of all columns (basic ones included; they are ~0).
  std::vector<double> reduced_costs(const std::vector<double>& cost,
                                    const std::vector<double>& y) const {
    std::vector<double> d(cost);
    for (std::size_t i = 0; i < rows_; ++i) {
      const double yi = y[i];
      if (yi == 0.0) continue;
      const double* row = dense_.data() + i * n_;
      for (std::size_t j = 0; j < n_; ++j) d[j] -= yi * row[j];
      d[n_ + i] -= yi;
    }
    for (std::size_t a = 0; a < artificial_rows_.size(); ++a) {
      d[n_ + rows_ + a] -= y[artificial_rows_[a]] * artificial_sign_[a];
    }
    return d;
  }

  std::vector<double> entering_column(std::size_t col) const {
    std::vector<double> alpha(rows_, 0.0);
    for (std::size_t i = 0; i < rows_; ++i) {
      const double a = entry(i, col);
      if (a == 0.0) continue;
      for (std::size_t k = 0; k < rows_; ++k) alpha[k] += binv_[k * rows_ + i] * a;
    }
    return alpha;
  }

  void pivot(std::size_t leave_pos, std::size_t entering, const std::vector<double>& alpha) {
    const double p = alpha[leave_pos];
    double* pivot_row = binv_.data() + leave_pos * rows_;
    for (std::size_t i = 0; i < rows_; ++i) pivot_row[i] /= p;
    for (std::size_t k = 0; k < rows_; ++k) {
      if (k == leave_pos || alpha[k] == 0.0) continue;
      double* row = binv_.data() + k * rows_;
      const double f = alpha[k];
      for (std::size_t i = 0; i < rows_; ++i) row[i] -= f * pivot_row[i];
    }
    const std::size_t leaving = basis_[leave_pos];
    position_[leaving] = -1;
    basis_[leave_pos] = entering;
    position_[entering] = static_cast<std::ptrdiff_t>(leave_pos);
    at_upper_[entering] = false;
    if (++pivots_since_refactor_ >= opt_.refactor_interval) refactor();
  }

  Status iterate(const std::vector<double>& cost) {
    const std::size_t degenerate_limit = 5 * (rows_ + n_);
    std::size_t degenerate_run = 0;
    bool bland = false;

    for (;;) {
      if (++iterations_ > opt_.max_iterations) throw LpError("iteration limit reached");
      const std::vector<double> y = duals_for(cost);
      const std::vector<double> d = reduced_costs(cost, y);

      std::ptrdiff_t entering = -1;
      double best = 0.0;
      for (std::size_t col = 0; col < columns(); ++col) {
        if (position_[col] >= 0 || upper_[col] <= lower_[col]) continue;
        const double gain = at_upper_[col] ? -d[col] : d[col];
        if (gain <= opt_.optimality_tol) continue;
        if (bland) {
          entering = static_cast<std::ptrdiff_t>(col);
          break;
        }
        if (gain > best) {
          best = gain;
          entering = static_cast<std::ptrdiff_t>(col);
        }
      }
      if (entering < 0) return Status::optimal;

      const auto q = static_cast<std::size_t>(entering);
      const double dir = at_upper_[q] ? -1.0 : 1.0;
      const std::vector<double> alpha = entering_column(q);

      double step = upper_[q] - lower_[q];
      std::ptrdiff_t leave_pos = -1;
      bool leave_to_upper = false;
      for (std::size_t k = 0; k < rows_; ++k) {
        const double rate = -dir * alpha[k];  // d x_B[k] / d step
        if (std::fabs(alpha[k]) <= opt_.pivot_tol) continue;
        const std::size_t col = basis_[k];
        double limit;
        bool to_upper;
        if (rate < 0.0) {
          limit = (value_[col] - lower_[col]) / -rate;
          to_upper = false;
        } else {
          if (upper_[col] == kInf) continue;
          limit = (upper_[col] - value_[col]) / rate;
          to_upper = true;
        }
        limit = std::max(limit, 0.0);
        bool take = false;
        if (limit < step - 1e-12) {
          take = true;
        } else if (limit <= step + 1e-12 && leave_pos >= 0) {
          const std::size_t incumbent = basis_[static_cast<std::size_t>(leave_pos)];
          if (bland) {
            take = col < incumbent;
          } else {
            const double a_new = std::fabs(alpha[k]);
            const double a_old = std::fabs(alpha[static_cast<std::size_t>(leave_pos)]);
            take = a_new > a_old || (a_new == a_old && col < incumbent);
          }
        } else if (limit <= step + 1e-12 && leave_pos < 0 && limit < step) {
          take = true;
        }
        if (take) {
          step = std::min(step, limit);
          leave_pos = static_cast<std::ptrdiff_t>(k);
          leave_to_upper = to_upper;
        }
      }
      if (step == kInf) return Status::unbounded;

      if (step <= 1e-12) {
        if (++degenerate_run >= degenerate_limit) bland = true;
      } else {
        degenerate_run = 0;
      }

      value_[q] += dir * step;
      for (std::size_t k = 0; k < rows_; ++k) {
        if (alpha[k] != 0.0) value_[basis_[k]] -= dir * step * alpha[k];
      }

      if (leave_pos < 0) {
        // Bound flip: the entering variable crossed its own range.
        at_upper_[q] = !at_upper_[q];
        value_[q] = at_upper_[q] ? upper_[q] : lower_[q];
        continue;
      }
      const auto lp_pos = static_cast<std::size_t>(leave_pos);
      const std::size_t leaving = basis_[lp_pos];
      value_[leaving] = leave_to_upper ? upper_[leaving] : lower_[leaving];
      at_upper_[leaving] = leave_to_upper;
      pivot(lp_pos, q, alpha);
    }
  }

  void drive_out_artificials() {
    for (std::size_t k = 0; k < rows_; ++k) {
      if (!is_artificial(basis_[k])) continue;
      // Row k of B^-1 A over non-artificial nonbasic columns.
      std::ptrdiff_t best_col = -1;
      double best_mag = opt_.pivot_tol * 1e3;
      for (std::size_t col = 0; col < n_ + rows_; ++col) {
        if (position_[col] >= 0) continue;
        double a = 0.0;
        for (std::size_t i = 0; i < rows_; ++i) a += binv_[k * rows_ + i] * entry(i, col);
        if (std::fabs(a) > best_mag) {
          best_mag = std::fabs(a);
          best_col = static_cast<std::ptrdiff_t>(col);
        }
      }
      if (best_col < 0) continue;  // redundant row; artificial stays at zero
      const auto col = static_cast<std::size_t>(best_col);
      const std::size_t leaving = basis_[k];
      const std::vector<double> alpha = entering_column(col);
      pivot(k, col, alpha);
      value_[leaving] = 0.0;
    }
    for (std::size_t a = 0; a < artificial_rows_.size(); ++a) {
      const std::size_t col = n_ + rows_ + a;
      upper_[col] = 0.0;
      if (position_[col] < 0) {
        value_[col] = 0.0;
        at_upper_[col] = false;
      }
    }
    refactor();
  }

  void extract(const std::vector<double>& cost, LpSolution& out) const {
    out.status = Status::optimal;
    out.x.assign(value_.begin(), value_.begin() + static_cast<std::ptrdiff_t>(n_));
    for (std::size_t j = 0; j < n_; ++j) {
      const double v = out.x[j];
      if (v < -1e-7 || v > 1.0 + 1e-7) throw LpError("numerical failure: bound violated");
      out.x[j] = std::clamp(v, 0.0, 1.0);
      if (std::fabs(out.x[j]) < 1e-12) out.x[j] = 0.0;
      if (std::fabs(out.x[j] - 1.0) < 1e-12) out.x[j] = 1.0;
    }
    const std::vector<double> y = duals_for(cost);
    const std::vector<double> d = reduced_costs(cost, y);
    out.duals.resize(rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
      out.duals[i] = objective_sign_ * orientation_[i] * y[i];
    }
    out.reduced_costs.resize(n_);
    for (std::size_t j = 0; j < n_; ++j) out.reduced_costs[j] = objective_sign_ * d[j];
    double obj = 0.0;
    for (std::size_t j = 0; j < n_; ++j) obj += true_cost_[j] * out.x[j];
    out.objective = objective_sign_ * obj;
  }

  SolverOptions opt_;
  std::size_t n_;
  std::size_t rows_;
  std::vector<double> dense_;
  std::vector<double> rhs_;
  std::vector<double> orientation_;
  std::vector<double> true_cost_;
  double objective_sign_ = 1.0;
  std::ptrdiff_t equality_row_ = -1;

  std::vector<std::size_t> artificial_rows_;
  std::vector<double> artificial_sign_;
  std::vector<double> lower_, upper_, value_;
  std::vector<bool> at_upper_;
  std::vector<std::size_t> basis_;
  std::vector<std::ptrdiff_t> position_;
  std::vector<double> binv_;
  std::size_t pivots_since_refactor_ = 0;
  std::size_t iterations_ = 0;
};

void check_shape(const LinearProgram& lp) {
  const std::size_t n = lp.variables();
  if (n == 0) throw LpError("LP has no variables");
  auto check = [&](const std::vector<double>& coeffs, double rhs) {
    if (coeffs.size() != n) throw LpError("row length does not match variable count");
    for (double a : coeffs) {
      if (!std::isfinite(a)) throw LpError("non-finite row coefficient");
    }
    if (!std::isfinite(rhs)) throw LpError("non-finite right-hand side");
  };
  for (const auto& row : lp.rows) check(row.coefficients, row.rhs);
  if (lp.equality) check(lp.equality->coefficients, lp.equality->rhs);
  for (double c : lp.objective) {
    if (!std::isfinite(c)) throw LpError("non-finite objective coefficient");
  }
}

}  // namespace

LpSolution solve(const LinearProgram& lp, const SolverOptions& options) {
  check_shape(lp);
  if (lp.row_count() == 0) {
    // Pure box: each variable sits at whichever bound its cost prefers.
    LpSolution out;
    out.status = Status::optimal;
    const double sign = lp.sense == Sense::maximize ? 1.0 : -1.0;
    out.x.resize(lp.variables());
    out.reduced_costs = lp.objective;
    for (std::size_t j = 0; j < lp.variables(); ++j) {
      out.x[j] = sign * lp.objective[j] > 0.0 ? 1.0 : 0.0;
      out.objective += lp.objective[j] * out.x[j];
    }
    return out;
  }
  BoundedSimplex simplex(lp, options);
  LpSolution out = simplex.run();
  if (out.optimal()) {
    double scale = 1.0;
    for (const auto& row : lp.rows) scale = std::max(scale, std::fabs(row.rhs));
    if (lp.equality) scale = std::max(scale, std::fabs(lp.equality->rhs));
    if (max_violation(lp, out.x) > 1e-7 * scale) {
      throw LpError("numerical failure: returned point violates a row");
    }
  }
  return out;
}

LinearProgram relax_mkp(const MkpInstance& inst) {
  LinearProgram lp;
  lp.sense = Sense::maximize;
  lp.objective.assign(inst.profits().begin(), inst.profits().end());
  for (std::size_t i = 0; i < inst.constraints(); ++i) {
    const auto row = inst.constraint_row(i);
    lp.rows.push_back({{row.begin(), row.end()}, RowSense::less_equal, inst.capacity(i)});
  }
  return lp;
}

LinearProgram with_hyperplane(LinearProgram lp, double k) {
  if (lp.equality) throw LpError("LP already has an equality row");
  lp.equality = EqualityRow{std::vector<double>(lp.variables(), 1.0), k};
  return lp;
}

LinearProgram bounds_lp(const MkpInstance& inst, double z, Sense sense) {
  LinearProgram lp = relax_mkp(inst);
  lp.sense = sense;
  lp.objective.assign(inst.items(), 1.0);
  lp.rows.push_back({{inst.profits().begin(), inst.profits().end()},
                     RowSense::greater_equal,
                     z + 1.0});
  return lp;
}

double max_violation(const LinearProgram& lp, const std::vector<double>& x) {
  double worst = 0.0;
  for (double v : x) worst = std::max({worst, -v, v - 1.0});
  auto activity = [&](const std::vector<double>& coeffs) {
    return std::inner_product(coeffs.begin(), coeffs.end(), x.begin(), 0.0);
  };
  for (const auto& row : lp.rows) {
    const double a = activity(row.coefficients);
    worst = std::max(worst, row.sense == RowSense::less_equal ? a - row.rhs : row.rhs - a);
  }
  if (lp.equality) worst = std::max(worst, std::fabs(activity(lp.equality->coefficients) - lp.equality->rhs));
  return worst;
}

}  // namespace mkpwc::lp
