#pragma once

#include <cstdint>
#include <vector>

#include "votelp/rng.hpp"
#include "votelp/types.hpp"

namespace votelp {

/// Draws a Borda instance from n impartial-culture ballots over the m+1
/// candidates (the preferred one plus m others). The ballots only matter
/// through the initial totals, so those are accumulated directly. Count-mode
/// instances get unit weights; sequence-mode instances draw weights from
/// {1, 2}. Identical (n, m, k, mode, seed) reproduce identical instances on
/// any platform.
inline ProblemInstance gen_uniform(int n, int m, int k, Mode mode, std::uint64_t seed) {
  if (n < 0) throw contract_error("gen_uniform: n must be >= 0");
  if (m < 1) throw contract_error("gen_uniform: m must be >= 1");
  if (k < 1) throw contract_error("gen_uniform: k must be >= 1");

  SplitMix64 ballots(mix_key(seed, 0x62616c6c6f7473ull));  // "ballots"
  std::vector<Score> sigma(static_cast<std::size_t>(m), 0);
  Score sigma_p = 0;

  std::vector<int> ranking(static_cast<std::size_t>(m) + 1);
  for (int ballot = 0; ballot < n; ++ballot) {
    for (std::size_t i = 0; i < ranking.size(); ++i) ranking[i] = static_cast<int>(i);
    for (std::size_t i = ranking.size() - 1; i > 0; --i) {
      std::swap(ranking[i], ranking[ballots.next_below(i + 1)]);
    }
    // ranking[r] is the candidate in position r from the top and receives
    // alpha_{m-r}; candidate 0 is the preferred one.
    for (std::size_t r = 0; r < ranking.size(); ++r) {
      const Score award = static_cast<Score>(static_cast<std::size_t>(m) - r);
      if (ranking[r] == 0) {
        sigma_p += award;
      } else {
        sigma[static_cast<std::size_t>(ranking[r]) - 1] += award;
      }
    }
  }

  std::vector<Score> weights(static_cast<std::size_t>(k), 1);
  if (mode == Mode::wcm) {
    SplitMix64 draw(mix_key(seed, 0x77656967687473ull));  // "weights"
    for (Score& w : weights) w = 1 + static_cast<Score>(draw.next_below(2));
  }

  return ProblemInstance(ScoringVector::borda(m), std::move(sigma), std::move(weights), sigma_p);
}

}  // namespace votelp
