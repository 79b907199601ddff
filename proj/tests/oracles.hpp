// Independent reference implementations for the tests. Everything here is
// deliberately naive: exhaustive enumeration and textbook linear algebra,
// with no shared code paths into the library's solvers.
#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>
#include <vector>

#include "votelp/simplex.hpp"
#include "votelp/types.hpp"

namespace oracles {

using votelp::Score;

/// All count vectors of length m summing to k.
inline std::vector<std::vector<int>> enumerate_count_configurations(int m, int k) {
  std::vector<std::vector<int>> out;
  std::vector<int> current(static_cast<std::size_t>(m), 0);
  const auto recurse = [&](auto&& self, int index, int remaining) -> void {
    if (index == m - 1) {
      current[static_cast<std::size_t>(index)] = remaining;
      out.push_back(current);
      return;
    }
    for (int take = 0; take <= remaining; ++take) {
      current[static_cast<std::size_t>(index)] = take;
      self(self, index + 1, remaining - take);
    }
  };
  recurse(recurse, 0, k);
  return out;
}

/// All sequences of length k over {0..m-1}.
inline std::vector<std::vector<int>> enumerate_sequence_configurations(int m, int k) {
  std::vector<std::vector<int>> out;
  std::vector<int> current(static_cast<std::size_t>(k), 0);
  const auto recurse = [&](auto&& self, int index) -> void {
    if (index == k) {
      out.push_back(current);
      return;
    }
    for (int j = 0; j < m; ++j) {
      current[static_cast<std::size_t>(index)] = j;
      self(self, index + 1);
    }
  };
  recurse(recurse, 0);
  return out;
}

/// Exhaustive multiset knapsack: best value over all k-multisets within the
/// weight cap, or nothing if no multiset fits.
inline std::optional<double> best_multiset_value(const std::vector<double>& values,
                                                 const std::vector<Score>& weights,
                                                 Score weight_cap, int k) {
  std::optional<double> best;
  for (const auto& counts :
       enumerate_count_configurations(static_cast<int>(values.size()), k)) {
    Score weight = 0;
    double value = 0.0;
    for (std::size_t j = 0; j < counts.size(); ++j) {
      weight += static_cast<Score>(counts[j]) * weights[j];
      value += static_cast<double>(counts[j]) * values[j];
    }
    if (weight > weight_cap) continue;
    if (!best || value > *best) best = value;
  }
  return best;
}

/// Exhaustive sequence knapsack over m^k sequences.
inline std::optional<double> best_sequence_value(
    const std::vector<std::vector<double>>& values, const std::vector<Score>& costs,
    const std::vector<Score>& penalties, Score cost_cap) {
  std::optional<double> best;
  const int m = static_cast<int>(values.size());
  const int k = static_cast<int>(penalties.size());
  for (const auto& seq : enumerate_sequence_configurations(m, k)) {
    Score spent = 0;
    double value = 0.0;
    for (int l = 0; l < k; ++l) {
      spent += penalties[static_cast<std::size_t>(l)] * costs[static_cast<std::size_t>(seq[static_cast<std::size_t>(l)])];
      value += values[static_cast<std::size_t>(seq[static_cast<std::size_t>(l)])][static_cast<std::size_t>(l)];
    }
    if (spent > cost_cap) continue;
    if (!best || value > *best) best = value;
  }
  return best;
}

/// Exhaustive minimum of max_i(final score) over *valid* matrices: every
/// manipulator ballot ranges over all permutations. Ground truth for both
/// modes on tiny instances.
inline Score tiny_exact_t_star(const votelp::ProblemInstance& instance) {
  const int m = instance.m();
  const int k = instance.k();
  std::vector<int> perm(static_cast<std::size_t>(m));
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<std::vector<int>> perms;
  do {
    perms.push_back(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));

  std::vector<Score> totals(instance.sigma());
  Score best = std::numeric_limits<Score>::max();
  const auto recurse = [&](auto&& self, int voter) -> void {
    if (voter == k) {
      Score value = 0;
      for (Score t : totals) value = std::max(value, t);
      best = std::min(best, value);
      return;
    }
    const Score w = instance.weights()[static_cast<std::size_t>(voter)];
    for (const auto& p : perms) {
      for (int i = 0; i < m; ++i) {
        totals[static_cast<std::size_t>(i)] +=
            w * instance.alpha().at(p[static_cast<std::size_t>(i)]);
      }
      self(self, voter + 1);
      for (int i = 0; i < m; ++i) {
        totals[static_cast<std::size_t>(i)] -=
            w * instance.alpha().at(p[static_cast<std::size_t>(i)]);
      }
    }
  };
  recurse(recurse, 0);
  return best;
}

// ------------------------------------------------------------------------
// Vertex-enumeration LP oracle. Only for small problems whose variables all
// have finite bounds (the feasible set is then a polytope, so if it is
// non-empty it has a vertex, and some vertex is optimal).

struct VertexLpResult {
  bool feasible = false;
  double objective_value = 0.0;
};

namespace vertex_impl {

/// Solves the n x n system by Gaussian elimination with partial pivoting;
/// empty result means singular.
inline std::optional<std::vector<double>> solve_square(std::vector<std::vector<double>> a,
                                                       std::vector<double> b) {
  const std::size_t n = b.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < n; ++r) {
      if (std::fabs(a[r][col]) > std::fabs(a[pivot][col])) pivot = r;
    }
    if (std::fabs(a[pivot][col]) < 1e-9) return std::nullopt;
    std::swap(a[pivot], a[col]);
    std::swap(b[pivot], b[col]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col) continue;
      const double f = a[r][col] / a[col][col];
      if (f == 0.0) continue;
      for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
      b[r] -= f * b[col];
    }
  }
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = b[i] / a[i][i];
  return x;
}

}  // namespace vertex_impl

inline VertexLpResult vertex_enumeration_lp(const votelp::LinearProgramSpec& spec) {
  const std::size_t n = spec.variable_count();

  // Candidate active hyperplanes: every constraint as equality, plus both
  // bounds of every variable.
  struct Plane {
    std::vector<double> a;
    double b;
  };
  std::vector<Plane> planes;
  for (const auto& row : spec.constraints) planes.push_back({row.coefficients, row.rhs});
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<double> unit(n, 0.0);
    unit[j] = 1.0;
    planes.push_back({unit, spec.lower_bounds[j]});
    planes.push_back({unit, spec.upper_bounds[j]});
  }

  const auto feasible_point = [&](const std::vector<double>& x) {
    for (std::size_t j = 0; j < n; ++j) {
      if (x[j] < spec.lower_bounds[j] - 1e-7 || x[j] > spec.upper_bounds[j] + 1e-7) return false;
    }
    for (const auto& row : spec.constraints) {
      double lhs = 0.0;
      for (std::size_t j = 0; j < n; ++j) lhs += row.coefficients[j] * x[j];
      const double tol = 1e-7 * std::max(1.0, std::fabs(row.rhs));
      switch (row.relation) {
        case votelp::LpRelation::less_equal:
          if (lhs > row.rhs + tol) return false;
          break;
        case votelp::LpRelation::greater_equal:
          if (lhs < row.rhs - tol) return false;
          break;
        case votelp::LpRelation::equal:
          if (std::fabs(lhs - row.rhs) > tol) return false;
          break;
      }
    }
    return true;
  };

  VertexLpResult result;
  std::vector<std::size_t> pick(n, 0);
  const auto consider = [&](const std::vector<double>& x) {
    if (!feasible_point(x)) return;
    double value = 0.0;
    for (std::size_t j = 0; j < n; ++j) value += spec.objective[j] * x[j];
    const bool better = spec.sense == votelp::LpSense::minimize ? value < result.objective_value
                                                                : value > result.objective_value;
    if (!result.feasible || better) {
      result.feasible = true;
      result.objective_value = value;
    }
  };

  // Equality rows are always active; choose the rest among all planes.
  const auto recurse = [&](auto&& self, std::size_t next_plane, std::size_t chosen) -> void {
    if (chosen == n) {
      std::vector<std::vector<double>> a;
      std::vector<double> b;
      for (std::size_t c = 0; c < n; ++c) {
        a.push_back(planes[pick[c]].a);
        b.push_back(planes[pick[c]].b);
      }
      if (auto x = vertex_impl::solve_square(std::move(a), std::move(b))) consider(*x);
      return;
    }
    for (std::size_t p = next_plane; p < planes.size(); ++p) {
      pick[chosen] = p;
      self(self, p + 1, chosen + 1);
    }
  };
  recurse(recurse, 0, 0);
  return result;
}

}  // namespace oracles
