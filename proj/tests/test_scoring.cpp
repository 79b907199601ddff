#include <catch2/catch_amalgamated.hpp>

#include "votelp/scoring.hpp"
#include "votelp/types.hpp"

using namespace votelp;

namespace {

// Five candidates at (5,6,6,6,7) plus a preferred candidate at 0, two
// manipulators, Borda. Both hand-built ballots push everyone to exactly 10,
// which equals the preferred candidate's final score.
ProblemInstance five_candidate_instance() {
  return ProblemInstance(ScoringVector::borda(5), {5, 6, 6, 6, 7}, {1, 1}, 0);
}

ManipulationMatrix all_ten_matrix() {
  ManipulationMatrix mat = ManipulationMatrix::zeros(2, 5, Validity::valid);
  const int rows[2][5] = {{4, 1, 2, 0, 3}, {1, 3, 2, 4, 0}};
  for (int r = 0; r < 2; ++r) {
    for (int c = 0; c < 5; ++c) mat.at(r, c) = rows[r][c];
  }
  return mat;
}

}  // namespace

TEST_CASE("scoring vector validates its shape") {
  CHECK_THROWS_AS(ScoringVector({1}), contract_error);
  CHECK_THROWS_AS(ScoringVector({0, 2, 1}), contract_error);
  CHECK_THROWS_AS(ScoringVector({-1, 0}), contract_error);

  const ScoringVector borda = ScoringVector::borda(3);
  CHECK(borda.reduced_size() == 3);
  CHECK(borda.top() == 3);
  CHECK(borda.reduced_max() == 2);
  CHECK(borda.reduced_sum() == 3);
  CHECK(borda.entries() == std::vector<Score>{0, 1, 2, 3});
}

TEST_CASE("problem instance validates its shape") {
  CHECK_THROWS_AS(ProblemInstance(ScoringVector::borda(2), {0, 0, 0}, {1}), contract_error);
  CHECK_THROWS_AS(ProblemInstance(ScoringVector::borda(2), {0, 0}, {}), contract_error);
  CHECK_THROWS_AS(ProblemInstance(ScoringVector::borda(2), {0, -1}, {1}), contract_error);
  CHECK_THROWS_AS(ProblemInstance(ScoringVector::borda(2), {0, 0}, {0}), contract_error);

  const ProblemInstance weighted(ScoringVector::borda(2), {0, 0}, {2, 1});
  CHECK(weighted.total_weight() == 3);
  CHECK_FALSE(weighted.unweighted());
  CHECK(five_candidate_instance().unweighted());
}

TEST_CASE("matrix validity predicates") {
  ManipulationMatrix valid = all_ten_matrix();
  CHECK(satisfies_valid(valid));
  CHECK(satisfies_relaxed(valid));

  // Swapping one column's entries keeps the matrix relaxed but puts two 1s
  // into the first row, so it is no longer valid.
  ManipulationMatrix relaxed = valid;
  std::swap(relaxed.at(0, 0), relaxed.at(1, 0));
  CHECK(satisfies_relaxed(relaxed));
  CHECK_FALSE(satisfies_valid(relaxed));

  ManipulationMatrix duplicated = ManipulationMatrix::zeros(2, 2, Validity::relaxed);
  duplicated.at(0, 0) = 0;
  duplicated.at(0, 1) = 0;
  duplicated.at(1, 0) = 1;
  duplicated.at(1, 1) = 1;
  CHECK(satisfies_relaxed(duplicated));
  CHECK_FALSE(satisfies_valid(duplicated));

  ManipulationMatrix lopsided = ManipulationMatrix::zeros(2, 2, Validity::relaxed);
  lopsided.at(0, 0) = 0;
  lopsided.at(0, 1) = 0;
  lopsided.at(1, 0) = 0;
  lopsided.at(1, 1) = 1;
  CHECK_FALSE(satisfies_relaxed(lopsided));
}

TEST_CASE("final scores of the hand-built two-ballot strategy") {
  const ProblemInstance instance = five_candidate_instance();
  const ManipulationMatrix mat = all_ten_matrix();

  const std::vector<Score> totals = candidate_final_scores(instance, mat);
  CHECK(totals == std::vector<Score>{10, 10, 10, 10, 10});
  CHECK(max_nonpreferred_score(instance, mat) == 10);
  CHECK(p_final_score(instance) == 10);
  CHECK(decide_win(instance, mat));
}

TEST_CASE("decide_win needs sigma_p and ties count as wins") {
  ProblemInstance no_sigma_p(ScoringVector::borda(2), {0, 0}, {1});
  const ManipulationMatrix mat = ManipulationMatrix::zeros(1, 2, Validity::relaxed);
  CHECK_THROWS_AS(p_final_score(no_sigma_p), contract_error);
  CHECK_THROWS_AS(decide_win(no_sigma_p, mat), contract_error);

  // One manipulator, Borda over three candidates: p ends at 2, the matrix
  // 0/1 split leaves the strongest non-preferred candidate at exactly 2.
  ProblemInstance tie(ScoringVector::borda(2), {1, 0}, {1}, 0);
  ManipulationMatrix ballot = ManipulationMatrix::zeros(1, 2, Validity::valid);
  ballot.at(0, 0) = 1;
  ballot.at(0, 1) = 0;
  CHECK(p_final_score(tie) == 2);
  CHECK(max_nonpreferred_score(tie, ballot) == 2);
  CHECK(decide_win(tie, ballot));
  ballot.at(0, 0) = 0;
  ballot.at(0, 1) = 1;
  CHECK(max_nonpreferred_score(tie, ballot) == 1);
  CHECK(decide_win(tie, ballot));
}

TEST_CASE("matrix shape mismatches are rejected") {
  const ProblemInstance instance = five_candidate_instance();
  CHECK_THROWS_AS(candidate_final_scores(instance, ManipulationMatrix::zeros(3, 5, Validity::valid)),
                  contract_error);
  CHECK_THROWS_AS(candidate_final_scores(instance, ManipulationMatrix::zeros(2, 4, Validity::valid)),
                  contract_error);
  ManipulationMatrix out_of_range = ManipulationMatrix::zeros(2, 5, Validity::relaxed);
  out_of_range.at(0, 0) = 5;
  CHECK_THROWS_AS(candidate_final_scores(instance, out_of_range), contract_error);
}

TEST_CASE("displacement penalty of a score vector") {
  CHECK(g_alpha(std::vector<Score>{0, 1, 1, 4, 9}, 2) == 8);
  CHECK(g_alpha(std::vector<Score>{0, 1, 1, 4, 9}, 0) == 0);
  CHECK(g_alpha(std::vector<Score>{0, 1, 1, 4, 9}, 100) == 9);  // clamped at the top
  CHECK(g_alpha(std::vector<Score>{3, 3, 3}, 2) == 0);
  CHECK(g_alpha(ScoringVector::borda(5), 2) == 2);  // reduced vector 0..4
  CHECK_THROWS_AS(g_alpha(std::vector<Score>{}, 1), contract_error);
  CHECK_THROWS_AS(g_alpha(std::vector<Score>{0, 1}, -1), contract_error);
}

TEST_CASE("displacement radius") {
  CHECK(beta_of(100, 1.0) == 22);
  CHECK(beta_of(1, 1.0) == 1);    // sqrt(1 * ln 1) = 0, floored to 1
  CHECK(beta_of(9, 1.0) == 5);    // sqrt(9 ln 9) = 4.447...
  CHECK(beta_of(9, 0.0) == 1);
  CHECK(beta_of(100, 2.0) == 43); // 2 * 21.459...
  CHECK_THROWS_AS(beta_of(0, 1.0), contract_error);
  CHECK_THROWS_AS(beta_of(5, -0.5), contract_error);
}
