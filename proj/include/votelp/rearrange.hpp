#pragma once

#include <vector>

#include "votelp/scoring.hpp"
#include "votelp/types.hpp"

namespace votelp {

namespace detail {

// Augmenting-path step of the matching peel: tries to match candidate `cand`
// to some score type with remaining multiplicity, displacing earlier matches.
inline bool augment(int cand, const std::vector<std::vector<int>>& counts,
                    std::vector<int>& owner_of_type, std::vector<char>& visited) {
  const int m = static_cast<int>(counts.size());
  for (int j = 0; j < m; ++j) {
    if (counts[static_cast<std::size_t>(cand)][static_cast<std::size_t>(j)] <= 0 ||
        visited[static_cast<std::size_t>(j)]) {
      continue;
    }
    visited[static_cast<std::size_t>(j)] = 1;
    if (owner_of_type[static_cast<std::size_t>(j)] < 0 ||
        augment(owner_of_type[static_cast<std::size_t>(j)], counts, owner_of_type, visited)) {
      owner_of_type[static_cast<std::size_t>(j)] = cand;
      return true;
    }
  }
  return false;
}

}  // namespace detail

/// Rearranges a relaxed matrix into a valid one with the same per-candidate
/// score multisets (hence identical final scores). The candidate-by-type
/// count table is a k-regular bipartite multigraph, so it decomposes into k
/// perfect matchings; each matching becomes one manipulator's ballot.
/// Requires a unit-weight instance: with unequal weights, per-candidate
/// multisets do not pin down per-voter totals.
inline ManipulationMatrix rearrange_to_valid(const ManipulationMatrix& relaxed,
                                             const ProblemInstance& instance) {
  if (!instance.unweighted()) {
    throw contract_error("rearrange_to_valid: instance must be unit-weight");
  }
  detail::check_matrix_shape(instance, relaxed, "rearrange_to_valid");
  if (!satisfies_relaxed(relaxed)) {
    throw contract_error("rearrange_to_valid: input matrix is not relaxed-feasible");
  }

  const int m = relaxed.cols;
  const int k = relaxed.rows;
  std::vector<std::vector<int>> counts(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) counts[static_cast<std::size_t>(i)] = relaxed.column_counts(i);

  ManipulationMatrix result = ManipulationMatrix::zeros(k, m, Validity::valid);
  for (int round = 0; round < k; ++round) {
    std::vector<int> owner_of_type(static_cast<std::size_t>(m), -1);
    for (int cand = 0; cand < m; ++cand) {
      std::vector<char> visited(static_cast<std::size_t>(m), 0);
      if (!detail::augment(cand, counts, owner_of_type, visited)) {
        // Regularity guarantees a perfect matching; reaching this line means
        // the input violated its contract in a way the checks above missed.
        throw solver_error("rearrange_to_valid: matching peel failed");
      }
    }
    for (int j = 0; j < m; ++j) {
      const int cand = owner_of_type[static_cast<std::size_t>(j)];
      result.at(round, cand) = j;
      counts[static_cast<std::size_t>(cand)][static_cast<std::size_t>(j)]--;
    }
  }
  return result;
}

}  // namespace votelp
