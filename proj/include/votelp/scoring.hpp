#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "votelp/types.hpp"

namespace votelp {

namespace detail {
inline void check_matrix_shape(const ProblemInstance& instance,
                               const ManipulationMatrix& mat, const char* op) {
  if (mat.rows != instance.k() || mat.cols != instance.m()) {
    throw contract_error(std::string(op) + ": matrix shape does not match instance");
  }
  for (int e : mat.entries) {
    if (e < 0 || e >= instance.m()) {
      throw contract_error(std::string(op) + ": score index out of range");
    }
  }
}
}  // namespace detail

/// Final score of every non-preferred candidate after the manipulators vote
/// as `mat` prescribes.
inline std::vector<Score> candidate_final_scores(const ProblemInstance& instance,
                                                 const ManipulationMatrix& mat) {
  detail::check_matrix_shape(instance, mat, "candidate_final_scores");
  std::vector<Score> totals(instance.sigma());
  for (int l = 0; l < mat.rows; ++l) {
    for (int i = 0; i < mat.cols; ++i) {
      totals[static_cast<std::size_t>(i)] +=
          instance.weights()[static_cast<std::size_t>(l)] * instance.alpha().at(mat.at(l, i));
    }
  }
  return totals;
}

/// The quantity the manipulators minimize: the best final score among the
/// non-preferred candidates.
inline Score max_nonpreferred_score(const ProblemInstance& instance,
                                    const ManipulationMatrix& mat) {
  const std::vector<Score> totals = candidate_final_scores(instance, mat);
  return *std::max_element(totals.begin(), totals.end());
}

/// Final score of the preferred candidate: sigma_p + W * alpha_m. Every
/// manipulator ranks the preferred candidate first, so the matrix is
/// irrelevant here.
inline Score p_final_score(const ProblemInstance& instance) {
  if (!instance.sigma_p()) {
    throw contract_error("p_final_score: instance has no sigma_p");
  }
  return *instance.sigma_p() + instance.total_weight() * instance.alpha().top();
}

/// True iff the preferred candidate is a winner (ties included) under `mat`.
inline bool decide_win(const ProblemInstance& instance, const ManipulationMatrix& mat) {
  return max_nonpreferred_score(instance, mat) <= p_final_score(instance);
}

/// Largest increase a score can take when its index moves up by at most
/// `beta` positions in the reduced vector alpha_0..alpha_{m-1}:
/// max_j alpha_{min(j+beta, m-1)} - alpha_j.
inline Score g_alpha(const std::vector<Score>& reduced_alpha, int beta) {
  if (reduced_alpha.empty()) throw contract_error("g_alpha: empty score vector");
  if (beta < 0) throw contract_error("g_alpha: beta must be non-negative");
  const int m = static_cast<int>(reduced_alpha.size());
  Score best = 0;
  for (int j = 0; j < m; ++j) {
    const int up = std::min(j + beta, m - 1);
    best = std::max(best, reduced_alpha[static_cast<std::size_t>(up)] -
                              reduced_alpha[static_cast<std::size_t>(j)]);
  }
  return best;
}

inline Score g_alpha(const ScoringVector& alpha, int beta) {
  std::vector<Score> reduced(alpha.entries().begin(), alpha.entries().end() - 1);
  return g_alpha(reduced, beta);
}

/// Displacement radius used by the additive rounding guarantee:
/// ceil(d * sqrt(m ln m)), at least 1.
inline int beta_of(int m, double d = 1.0) {
  if (m < 1) throw contract_error("beta_of: m must be >= 1");
  if (d < 0.0) throw contract_error("beta_of: d must be non-negative");
  const double raw = d * std::sqrt(static_cast<double>(m) * std::log(static_cast<double>(m)));
  const int beta = static_cast<int>(std::ceil(raw));
  return std::max(beta, 1);
}

}  // namespace votelp
