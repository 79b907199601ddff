#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "votelp/types.hpp"

namespace votelp {

/// Bounds at or beyond this magnitude are treated as infinite.
inline constexpr double kLpInfinity = 1e30;

enum class LpSense { minimize, maximize };
enum class LpRelation { less_equal, greater_equal, equal };
enum class LpStatus { optimal, infeasible, unbounded, failure };

struct LpConstraint {
  std::vector<double> coefficients;
  LpRelation relation = LpRelation::less_equal;
  double rhs = 0.0;
};

/// Dense LP in the caller's natural form: min/max c.x subject to row
/// relations and per-variable bounds (use +-kLpInfinity for unbounded ends).
struct LinearProgramSpec {
  LpSense sense = LpSense::minimize;
  std::vector<double> objective;
  std::vector<LpConstraint> constraints;
  std::vector<double> lower_bounds;
  std::vector<double> upper_bounds;

  std::size_t variable_count() const { return objective.size(); }

  void add_variable(double cost, double lower, double upper) {
    objective.push_back(cost);
    lower_bounds.push_back(lower);
    upper_bounds.push_back(upper);
  }

  void add_constraint(std::vector<double> coefficients, LpRelation relation, double rhs) {
    constraints.push_back({std::move(coefficients), relation, rhs});
  }
};

/// `solution`, `objective_value` and `duals` are meaningful only when status
/// is optimal. `duals` has one entry per constraint: the rate of change of
/// the optimal objective per unit increase of that row's right-hand side (so
/// under minimization, >= rows carry non-negative duals and <= rows
/// non-positive ones; signs flip under maximization). No exceptions are
/// thrown for infeasible/unbounded/failed models; the caller inspects the
/// status.
struct LpResult {
  LpStatus status = LpStatus::failure;
  std::vector<double> solution;
  double objective_value = 0.0;
  std::vector<double> duals;
};

namespace lp_impl {

constexpr double kPivotTol = 1e-9;
constexpr double kEnterTol = 1e-9;
constexpr double kResidualTol = 1e-6;
constexpr int kBlandTrigger = 64;

struct Tableau {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> a;  // rows x cols, row-major
  std::vector<double> b;
  std::vector<int> basis;

  double& at(std::size_t r, std::size_t c) { return a[r * cols + c]; }
  double at(std::size_t r, std::size_t c) const { return a[r * cols + c]; }
};

enum class PivotOutcome { optimal, unbounded, iteration_limit };

inline void pivot(Tableau& t, std::vector<double>& reduced, std::size_t row, std::size_t col) {
  const double piv = t.at(row, col);
  for (std::size_t c = 0; c < t.cols; ++c) t.at(row, c) /= piv;
  t.b[row] /= piv;
  t.at(row, col) = 1.0;
  for (std::size_t r = 0; r < t.rows; ++r) {
    if (r == row) continue;
    const double factor = t.at(r, col);
    if (factor == 0.0) continue;
    for (std::size_t c = 0; c < t.cols; ++c) t.at(r, c) -= factor * t.at(row, c);
    t.b[r] -= factor * t.b[row];
    t.at(r, col) = 0.0;
  }
  const double dfactor = reduced[col];
  if (dfactor != 0.0) {
    for (std::size_t c = 0; c < t.cols; ++c) reduced[c] -= dfactor * t.at(row, c);
    reduced[col] = 0.0;
  }
  t.basis[row] = static_cast<int>(col);
}

inline double basis_objective(const Tableau& t, const std::vector<double>& cost) {
  double z = 0.0;
  for (std::size_t r = 0; r < t.rows; ++r) {
    z += cost[static_cast<std::size_t>(t.basis[r])] * t.b[r];
  }
  return z;
}

/// Minimizes cost.x over the tableau. `allowed` bars columns from entering
/// (used to keep retired artificials out). Dantzig pricing with a switch to
/// Bland's rule after a stall, so degeneracy cannot cycle forever.
inline PivotOutcome run_simplex(Tableau& t, const std::vector<double>& cost,
                                std::vector<char>& allowed, std::vector<char>& is_artificial) {
  std::vector<double> reduced(cost);
  for (std::size_t r = 0; r < t.rows; ++r) {
    const double cb = cost[static_cast<std::size_t>(t.basis[r])];
    if (cb == 0.0) continue;
    for (std::size_t c = 0; c < t.cols; ++c) reduced[c] -= cb * t.at(r, c);
  }

  const std::size_t max_iterations = 2000 + 200 * (t.rows + t.cols);
  double best_z = basis_objective(t, cost);
  int stalled = 0;

  for (std::size_t iter = 0; iter < max_iterations; ++iter) {
    const bool bland = stalled >= kBlandTrigger;

    std::size_t enter = t.cols;
    double most_negative = -kEnterTol;
    for (std::size_t c = 0; c < t.cols; ++c) {
      if (!allowed[c]) continue;
      if (reduced[c] < most_negative) {
        enter = c;
        if (bland) break;
        most_negative = reduced[c];
      }
    }
    if (enter == t.cols) return PivotOutcome::optimal;

    std::size_t leave = t.rows;
    double best_ratio = 0.0;
    for (std::size_t r = 0; r < t.rows; ++r) {
      const double coeff = t.at(r, enter);
      if (coeff <= kPivotTol) continue;
      const double ratio = t.b[r] / coeff;
      if (leave == t.rows || ratio < best_ratio - 1e-9) {
        leave = r;
        best_ratio = ratio;
      } else if (ratio < best_ratio + 1e-9) {
        if (bland ? (t.basis[r] < t.basis[leave])
                  : (coeff > t.at(leave, enter))) {
          leave = r;
          best_ratio = ratio;
        }
      }
    }
    if (leave == t.rows) return PivotOutcome::unbounded;

    const int leaving_column = t.basis[leave];
    pivot(t, reduced, leave, enter);
    if (is_artificial[static_cast<std::size_t>(leaving_column)]) {
      allowed[static_cast<std::size_t>(leaving_column)] = 0;
    }

    const double z = basis_objective(t, cost);
    if (z < best_z - 1e-12) {
      best_z = z;
      stalled = 0;
    } else {
      ++stalled;
    }
  }
  return PivotOutcome::iteration_limit;
}

/// How one user-facing variable maps into the standardized non-negative
/// columns: x = shift + sum over terms of sign * x_col.
struct VariableMap {
  double shift = 0.0;
  std::vector<std::pair<std::size_t, double>> terms;
};

struct StandardRow {
  std::vector<double> coefficients;  // over standardized columns
  LpRelation relation = LpRelation::less_equal;
  double rhs = 0.0;
};

}  // namespace lp_impl

/// Two-phase primal simplex on a dense tableau. General bounds are reduced
/// to non-negative variables by shifting (finite lower), reflecting (finite
/// upper only) or splitting (free); finite ranges add an explicit bound row.
/// Before reporting optimal, the candidate point is checked against the
/// original rows; anything out of tolerance downgrades to failure rather
/// than returning a wrong certificate.
inline LpResult solve_lp(const LinearProgramSpec& spec) {
  using namespace lp_impl;

  const std::size_t n = spec.variable_count();
  if (spec.lower_bounds.size() != n || spec.upper_bounds.size() != n) {
    throw contract_error("solve_lp: bounds must cover every variable");
  }
  for (const LpConstraint& row : spec.constraints) {
    if (row.coefficients.size() != n) {
      throw contract_error("solve_lp: constraint width does not match variable count");
    }
  }
  for (std::size_t j = 0; j < n; ++j) {
    if (spec.lower_bounds[j] > spec.upper_bounds[j]) {
      return {LpStatus::infeasible, {}, 0.0};
    }
  }

  // Standardize variables.
  std::vector<VariableMap> maps(n);
  std::vector<double> std_cost;
  std::vector<StandardRow> bound_rows;
  const double sense_sign = spec.sense == LpSense::minimize ? 1.0 : -1.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double lower = spec.lower_bounds[j];
    const double upper = spec.upper_bounds[j];
    const bool lower_finite = lower > -kLpInfinity;
    const bool upper_finite = upper < kLpInfinity;
    if (lower_finite) {
      maps[j].shift = lower;
      maps[j].terms.push_back({std_cost.size(), 1.0});
      std_cost.push_back(sense_sign * spec.objective[j]);
      if (upper_finite) {
        StandardRow row;
        row.coefficients.assign(std_cost.size(), 0.0);
        row.coefficients.back() = 1.0;
        row.relation = LpRelation::less_equal;
        row.rhs = upper - lower;
        bound_rows.push_back(std::move(row));
      }
    } else if (upper_finite) {
      maps[j].shift = upper;
      maps[j].terms.push_back({std_cost.size(), -1.0});
      std_cost.push_back(-sense_sign * spec.objective[j]);
    } else {
      maps[j].terms.push_back({std_cost.size(), 1.0});
      std_cost.push_back(sense_sign * spec.objective[j]);
      maps[j].terms.push_back({std_cost.size(), -1.0});
      std_cost.push_back(-sense_sign * spec.objective[j]);
    }
  }
  const std::size_t n_std = std_cost.size();

  // Substitute the variable maps into the caller's rows.
  std::vector<StandardRow> rows;
  rows.reserve(spec.constraints.size() + bound_rows.size());
  for (const LpConstraint& src : spec.constraints) {
    StandardRow row;
    row.coefficients.assign(n_std, 0.0);
    row.relation = src.relation;
    row.rhs = src.rhs;
    for (std::size_t j = 0; j < n; ++j) {
      const double a = src.coefficients[j];
      if (a == 0.0) continue;
      row.rhs -= a * maps[j].shift;
      for (const auto& [col, sign] : maps[j].terms) row.coefficients[col] += a * sign;
    }
    rows.push_back(std::move(row));
  }
  for (StandardRow& row : bound_rows) {
    row.coefficients.resize(n_std, 0.0);
    rows.push_back(std::move(row));
  }

  // Assemble the tableau: slack for <=, surplus + artificial for >=,
  // artificial for ==; right-hand sides normalized non-negative first.
  const std::size_t n_rows = rows.size();
  std::size_t n_slack = 0;
  std::size_t n_artificial = 0;
  std::vector<char> row_negated(n_rows, 0);
  for (std::size_t r = 0; r < n_rows; ++r) {
    StandardRow& row = rows[r];
    if (row.rhs < 0.0) {
      row_negated[r] = 1;
      for (double& a : row.coefficients) a = -a;
      row.rhs = -row.rhs;
      if (row.relation == LpRelation::less_equal) {
        row.relation = LpRelation::greater_equal;
      } else if (row.relation == LpRelation::greater_equal) {
        row.relation = LpRelation::less_equal;
      }
    }
    if (row.relation != LpRelation::equal) ++n_slack;
    if (row.relation != LpRelation::less_equal) ++n_artificial;
  }

  Tableau t;
  t.rows = n_rows;
  t.cols = n_std + n_slack + n_artificial;
  t.a.assign(t.rows * t.cols, 0.0);
  t.b.assign(t.rows, 0.0);
  t.basis.assign(t.rows, -1);
  std::vector<char> is_artificial(t.cols, 0);
  std::vector<char> allowed(t.cols, 1);
  std::vector<double> phase1_cost(t.cols, 0.0);
  std::vector<double> phase2_cost(std_cost);
  phase2_cost.resize(t.cols, 0.0);

  // Each row keeps a marker: the appended column whose coefficients are
  // exactly the row's unit vector (the slack for <=, the artificial
  // otherwise). Its final reduced cost reveals the row's dual value.
  std::vector<std::size_t> row_marker(n_rows, 0);
  std::size_t next_slack = n_std;
  std::size_t next_artificial = n_std + n_slack;
  for (std::size_t r = 0; r < n_rows; ++r) {
    for (std::size_t c = 0; c < n_std; ++c) t.at(r, c) = rows[r].coefficients[c];
    t.b[r] = rows[r].rhs;
    switch (rows[r].relation) {
      case LpRelation::less_equal:
        t.at(r, next_slack) = 1.0;
        row_marker[r] = next_slack;
        t.basis[r] = static_cast<int>(next_slack++);
        break;
      case LpRelation::greater_equal:
        t.at(r, next_slack++) = -1.0;
        [[fallthrough]];
      case LpRelation::equal:
        t.at(r, next_artificial) = 1.0;
        is_artificial[next_artificial] = 1;
        phase1_cost[next_artificial] = 1.0;
        row_marker[r] = next_artificial;
        t.basis[r] = static_cast<int>(next_artificial++);
        break;
    }
  }

  double rhs_scale = 1.0;
  for (double v : t.b) rhs_scale = std::max(rhs_scale, std::fabs(v));

  // Phase 1: drive the artificials to zero.
  if (n_artificial > 0) {
    const PivotOutcome outcome = run_simplex(t, phase1_cost, allowed, is_artificial);
    if (outcome == PivotOutcome::iteration_limit) return {LpStatus::failure, {}, 0.0};
    const double infeasibility = basis_objective(t, phase1_cost);
    if (outcome == PivotOutcome::unbounded) return {LpStatus::failure, {}, 0.0};
    if (infeasibility > kResidualTol * rhs_scale) return {LpStatus::infeasible, {}, 0.0};

    // Kick lingering artificials out of the basis; rows where no real column
    // remains are redundant and keep a zero-valued artificial harmlessly.
    for (std::size_t r = 0; r < t.rows; ++r) {
      const std::size_t bc = static_cast<std::size_t>(t.basis[r]);
      if (!is_artificial[bc]) continue;
      std::vector<double> dummy(t.cols, 0.0);
      for (std::size_t c = 0; c < n_std + n_slack; ++c) {
        if (std::fabs(t.at(r, c)) > kPivotTol) {
          pivot(t, dummy, r, c);
          allowed[bc] = 0;
          break;
        }
      }
    }
    for (std::size_t c = n_std + n_slack; c < t.cols; ++c) allowed[c] = 0;
  }

  // Phase 2: optimize the real objective from the feasible basis.
  const PivotOutcome outcome = run_simplex(t, phase2_cost, allowed, is_artificial);
  if (outcome == PivotOutcome::iteration_limit) return {LpStatus::failure, {}, 0.0};
  if (outcome == PivotOutcome::unbounded) return {LpStatus::unbounded, {}, 0.0};

  // Recover the caller's variables.
  std::vector<double> std_value(t.cols, 0.0);
  for (std::size_t r = 0; r < t.rows; ++r) {
    std_value[static_cast<std::size_t>(t.basis[r])] = t.b[r];
  }
  std::vector<double> x(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    double value = maps[j].shift;
    for (const auto& [col, sign] : maps[j].terms) value += sign * std_value[col];
    x[j] = std::clamp(value, spec.lower_bounds[j], spec.upper_bounds[j]);
  }

  // Self-check: never hand back a point that violates the original rows.
  for (const LpConstraint& row : spec.constraints) {
    double lhs = 0.0;
    for (std::size_t j = 0; j < n; ++j) lhs += row.coefficients[j] * x[j];
    const double tol = kResidualTol * std::max(1.0, std::fabs(row.rhs));
    const bool ok = row.relation == LpRelation::less_equal  ? lhs <= row.rhs + tol
                  : row.relation == LpRelation::greater_equal ? lhs >= row.rhs - tol
                                                              : std::fabs(lhs - row.rhs) <= tol;
    if (!ok) return {LpStatus::failure, {}, 0.0};
  }

  // Constraint duals, read off the markers' final reduced costs: the marker
  // column of row r is the unit vector e_r, so its reduced cost under the
  // phase-2 objective is -c_B B^{-1} e_r. Undo the row negations and the
  // internal-minimization sign to get d(objective)/d(rhs) in caller terms.
  std::vector<double> reduced(phase2_cost);
  for (std::size_t r = 0; r < t.rows; ++r) {
    const double cb = phase2_cost[static_cast<std::size_t>(t.basis[r])];
    if (cb == 0.0) continue;
    for (std::size_t c = 0; c < t.cols; ++c) reduced[c] -= cb * t.at(r, c);
  }
  std::vector<double> duals(spec.constraints.size(), 0.0);
  for (std::size_t r = 0; r < duals.size(); ++r) {
    double d = -reduced[row_marker[r]];
    if (row_negated[r]) d = -d;
    duals[r] = sense_sign * d;
  }

  double objective = 0.0;
  for (std::size_t j = 0; j < n; ++j) objective += spec.objective[j] * x[j];
  return {LpStatus::optimal, std::move(x), objective, std::move(duals)};
}

}  // namespace votelp
