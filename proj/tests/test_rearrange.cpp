#include <algorithm>
#include <catch2/catch_amalgamated.hpp>

#include "votelp/rearrange.hpp"
#include "votelp/rng.hpp"
#include "votelp/scoring.hpp"

using namespace votelp;

namespace {

ProblemInstance unit_instance(int m, int k) {
  return ProblemInstance(ScoringVector::borda(m),
                         std::vector<Score>(static_cast<std::size_t>(m), 0),
                         std::vector<Score>(static_cast<std::size_t>(k), 1));
}

/// Random relaxed matrix: stack k random permutations, then shuffle each
/// column internally. Column multisets stay put; rows usually stop being
/// permutations.
ManipulationMatrix random_relaxed(int m, int k, SplitMix64& rng) {
  ManipulationMatrix mat = ManipulationMatrix::zeros(k, m, Validity::relaxed);
  std::vector<int> perm(static_cast<std::size_t>(m));
  for (int r = 0; r < k; ++r) {
    for (int i = 0; i < m; ++i) perm[static_cast<std::size_t>(i)] = i;
    for (int i = m - 1; i > 0; --i) {
      std::swap(perm[static_cast<std::size_t>(i)],
                perm[static_cast<std::size_t>(rng.next_below(static_cast<std::uint64_t>(i) + 1))]);
    }
    for (int i = 0; i < m; ++i) mat.at(r, i) = perm[static_cast<std::size_t>(i)];
  }
  for (int i = 0; i < m; ++i) {
    for (int r = k - 1; r > 0; --r) {
      const int other = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(r) + 1));
      std::swap(mat.at(r, i), mat.at(other, i));
    }
  }
  return mat;
}

}  // namespace

TEST_CASE("two-candidate rearrangement") {
  const ProblemInstance instance = unit_instance(2, 2);
  ManipulationMatrix relaxed = ManipulationMatrix::zeros(2, 2, Validity::relaxed);
  // Both rows (0,0) / (1,1): relaxed but not valid.
  relaxed.at(0, 0) = 0;
  relaxed.at(0, 1) = 0;
  relaxed.at(1, 0) = 1;
  relaxed.at(1, 1) = 1;

  const ManipulationMatrix valid = rearrange_to_valid(relaxed, instance);
  CHECK(satisfies_valid(valid));
  CHECK(valid.validity == Validity::valid);
  for (int i = 0; i < 2; ++i) {
    CHECK(valid.column_counts(i) == relaxed.column_counts(i));
  }
  CHECK(candidate_final_scores(instance, valid) == candidate_final_scores(instance, relaxed));
}

TEST_CASE("rearrangement preserves column multisets and scores") {
  SplitMix64 rng(20240817);
  for (int trial = 0; trial < 60; ++trial) {
    const int m = 2 + static_cast<int>(rng.next_below(5));
    const int k = 1 + static_cast<int>(rng.next_below(4));
    const ProblemInstance instance = unit_instance(m, k);
    const ManipulationMatrix relaxed = random_relaxed(m, k, rng);
    REQUIRE(satisfies_relaxed(relaxed));

    const ManipulationMatrix valid = rearrange_to_valid(relaxed, instance);
    REQUIRE(satisfies_valid(valid));
    for (int i = 0; i < m; ++i) {
      CHECK(valid.column_counts(i) == relaxed.column_counts(i));
    }
    CHECK(candidate_final_scores(instance, valid) == candidate_final_scores(instance, relaxed));
  }
}

TEST_CASE("rearrangement rejects bad inputs") {
  const ProblemInstance instance = unit_instance(2, 2);

  ManipulationMatrix not_relaxed = ManipulationMatrix::zeros(2, 2, Validity::relaxed);
  not_relaxed.at(0, 0) = 0;
  not_relaxed.at(0, 1) = 0;
  not_relaxed.at(1, 0) = 0;
  not_relaxed.at(1, 1) = 1;
  CHECK_THROWS_AS(rearrange_to_valid(not_relaxed, instance), contract_error);

  ManipulationMatrix fine = ManipulationMatrix::zeros(2, 2, Validity::relaxed);
  fine.at(0, 0) = 0;
  fine.at(0, 1) = 1;
  fine.at(1, 0) = 1;
  fine.at(1, 1) = 0;
  const ProblemInstance weighted(ScoringVector::borda(2), {0, 0}, {2, 1});
  CHECK_THROWS_AS(rearrange_to_valid(fine, weighted), contract_error);

  const ProblemInstance wrong_shape = unit_instance(3, 2);
  CHECK_THROWS_AS(rearrange_to_valid(fine, wrong_shape), contract_error);
}

TEST_CASE("valid input passes through rearrangement unchanged in scores") {
  const ProblemInstance instance = unit_instance(4, 3);
  SplitMix64 rng(7);
  ManipulationMatrix valid_in = ManipulationMatrix::zeros(3, 4, Validity::valid);
  std::vector<int> perm{0, 1, 2, 3};
  for (int r = 0; r < 3; ++r) {
    std::next_permutation(perm.begin(), perm.end());
    for (int i = 0; i < 4; ++i) valid_in.at(r, i) = perm[static_cast<std::size_t>(i)];
  }
  valid_in.validity = Validity::relaxed;  // callers may hold it as merely relaxed
  const ManipulationMatrix out = rearrange_to_valid(valid_in, instance);
  CHECK(satisfies_valid(out));
  CHECK(candidate_final_scores(instance, out) == candidate_final_scores(instance, valid_in));
}
