#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <tuple>
#include <vector>

#include "votelp/rearrange.hpp"
#include "votelp/rng.hpp"
#include "votelp/scoring.hpp"
#include "votelp/types.hpp"

namespace votelp {

namespace rounding_impl {

/// Index into `weights` drawn proportionally to the (clamped, renormalized)
/// weights, using one uniform draw from `stream`.
inline std::size_t sample_index(const std::vector<double>& weights, SplitMix64& stream) {
  double total = 0.0;
  for (double w : weights) total += std::max(w, 0.0);
  if (!(total > 0.0)) {
    throw contract_error("sample_configurations: candidate support carries no weight");
  }
  const double threshold = stream.next_unit() * total;
  double acc = 0.0;
  for (std::size_t c = 0; c < weights.size(); ++c) {
    acc += std::max(weights[c], 0.0);
    if (threshold < acc) return c;
  }
  return weights.size() - 1;  // guard against accumulated round-off
}

}  // namespace rounding_impl

/// Draws one count configuration per candidate, independently, each from its
/// own stream keyed by (seed, candidate) so results do not depend on
/// evaluation order.
inline std::vector<CountConfiguration> sample_count_configurations(
    const FractionalSolution& solution, std::uint64_t seed) {
  if (solution.mode != Mode::ucm) {
    throw contract_error("sample_count_configurations: solution is not in count form");
  }
  std::vector<CountConfiguration> picks;
  picks.reserve(solution.count_support.size());
  for (std::size_t i = 0; i < solution.count_support.size(); ++i) {
    const auto& support = solution.count_support[i];
    std::vector<double> weights(support.size());
    for (std::size_t c = 0; c < support.size(); ++c) weights[c] = support[c].weight;
    SplitMix64 stream(mix_key(seed, i));
    picks.push_back(support[rounding_impl::sample_index(weights, stream)].configuration);
  }
  return picks;
}

inline std::vector<SequenceConfiguration> sample_sequence_configurations(
    const FractionalSolution& solution, std::uint64_t seed) {
  if (solution.mode != Mode::wcm) {
    throw contract_error("sample_sequence_configurations: solution is not in sequence form");
  }
  std::vector<SequenceConfiguration> picks;
  picks.reserve(solution.sequence_support.size());
  for (std::size_t i = 0; i < solution.sequence_support.size(); ++i) {
    const auto& support = solution.sequence_support[i];
    std::vector<double> weights(support.size());
    for (std::size_t c = 0; c < support.size(); ++c) weights[c] = support[c].weight;
    SplitMix64 stream(mix_key(seed, i));
    picks.push_back(support[rounding_impl::sample_index(weights, stream)].configuration);
  }
  return picks;
}

/// Repairs independently sampled count configurations into a relaxed matrix:
/// all k*m handed-out scores are ranked (score index ascending, then sampled
/// final total descending, then candidate index), and the score at rank r is
/// replaced by type r/k. Each type then appears exactly k times, and every
/// score moves by a bounded number of positions.
inline ManipulationMatrix fix_ucm(const std::vector<CountConfiguration>& configs,
                                  const ProblemInstance& instance) {
  if (!instance.unweighted()) throw contract_error("fix_ucm: requires unit weights");
  const int m = instance.m();
  const int k = instance.k();
  if (static_cast<int>(configs.size()) != m) {
    throw contract_error("fix_ucm: one configuration per candidate required");
  }

  std::vector<Score> totals(instance.sigma());
  for (int i = 0; i < m; ++i) {
    const auto& counts = configs[static_cast<std::size_t>(i)].counts;
    if (static_cast<int>(counts.size()) != m) {
      throw contract_error("fix_ucm: configuration width does not match instance");
    }
    int handed = 0;
    for (int j = 0; j < m; ++j) {
      const int c = counts[static_cast<std::size_t>(j)];
      if (c < 0) throw contract_error("fix_ucm: negative count");
      handed += c;
      totals[static_cast<std::size_t>(i)] += static_cast<Score>(c) * instance.alpha().at(j);
    }
    if (handed != k) throw contract_error("fix_ucm: configuration does not hand out k scores");
  }

  std::vector<std::pair<int, int>> events;  // (old type, candidate)
  events.reserve(static_cast<std::size_t>(m) * k);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      for (int c = 0; c < configs[static_cast<std::size_t>(i)].counts[static_cast<std::size_t>(j)];
           ++c) {
        events.emplace_back(j, i);
      }
    }
  }
  std::sort(events.begin(), events.end(), [&](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first < b.first;
    const Score ta = totals[static_cast<std::size_t>(a.second)];
    const Score tb = totals[static_cast<std::size_t>(b.second)];
    if (ta != tb) return ta > tb;
    return a.second < b.second;
  });

  std::vector<std::vector<int>> new_indices(static_cast<std::size_t>(m));
  for (std::size_t rank = 0; rank < events.size(); ++rank) {
    new_indices[static_cast<std::size_t>(events[rank].second)].push_back(
        static_cast<int>(rank) / k);
  }
  ManipulationMatrix mat = ManipulationMatrix::zeros(k, m, Validity::relaxed);
  for (int i = 0; i < m; ++i) {
    for (int r = 0; r < k; ++r) {
      mat.at(r, i) = new_indices[static_cast<std::size_t>(i)][static_cast<std::size_t>(r)];
    }
  }
  return mat;
}

/// Repairs independently sampled sequence configurations into a valid
/// matrix: within every manipulator's ballot the m intended scores are
/// ranked the same way, and the score at rank r becomes type r, i.e. the
/// ballot turns into a permutation that respects the intended order.
inline ManipulationMatrix fix_wcm(const std::vector<SequenceConfiguration>& configs,
                                  const ProblemInstance& instance) {
  const int m = instance.m();
  const int k = instance.k();
  if (static_cast<int>(configs.size()) != m) {
    throw contract_error("fix_wcm: one configuration per candidate required");
  }
  for (const SequenceConfiguration& config : configs) {
    if (static_cast<int>(config.indices.size()) != k) {
      throw contract_error("fix_wcm: configuration length does not match manipulator count");
    }
    for (int j : config.indices) {
      if (j < 0 || j >= m) throw contract_error("fix_wcm: score index out of range");
    }
  }

  std::vector<Score> totals(instance.sigma());
  for (int i = 0; i < m; ++i) {
    totals[static_cast<std::size_t>(i)] +=
        configuration_cost(instance, configs[static_cast<std::size_t>(i)]);
  }

  ManipulationMatrix mat = ManipulationMatrix::zeros(k, m, Validity::valid);
  for (int l = 0; l < k; ++l) {
    std::vector<int> order(static_cast<std::size_t>(m));
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
      const int ja = configs[static_cast<std::size_t>(a)].indices[static_cast<std::size_t>(l)];
      const int jb = configs[static_cast<std::size_t>(b)].indices[static_cast<std::size_t>(l)];
      if (ja != jb) return ja < jb;
      const Score ta = totals[static_cast<std::size_t>(a)];
      const Score tb = totals[static_cast<std::size_t>(b)];
      if (ta != tb) return ta > tb;
      return a < b;
    });
    for (int rank = 0; rank < m; ++rank) {
      mat.at(l, order[static_cast<std::size_t>(rank)]) = rank;
    }
  }
  return mat;
}

/// Variant of the sequence fixing pass that refreshes the tie-breaking
/// totals after every ballot it fixes: a candidate bumped upward early
/// thereby sorts as "currently higher" later and is pushed down in the
/// remaining ballots, instead of absorbing the whole displacement alone.
/// Ballots are processed in the given order (any permutation of 0..k-1);
/// the output row for ballot l is written at row l regardless.
inline ManipulationMatrix fix_wcm_adaptive(const std::vector<SequenceConfiguration>& configs,
                                           const ProblemInstance& instance,
                                           const std::vector<int>& ballot_order) {
  const int m = instance.m();
  const int k = instance.k();
  if (static_cast<int>(configs.size()) != m) {
    throw contract_error("fix_wcm_adaptive: one configuration per candidate required");
  }
  for (const SequenceConfiguration& config : configs) {
    if (static_cast<int>(config.indices.size()) != k) {
      throw contract_error("fix_wcm_adaptive: configuration length does not match manipulators");
    }
    for (int j : config.indices) {
      if (j < 0 || j >= m) throw contract_error("fix_wcm_adaptive: score index out of range");
    }
  }
  if (static_cast<int>(ballot_order.size()) != k) {
    throw contract_error("fix_wcm_adaptive: ballot order must list every ballot once");
  }
  std::vector<char> seen(static_cast<std::size_t>(k), 0);
  for (int l : ballot_order) {
    if (l < 0 || l >= k || seen[static_cast<std::size_t>(l)]) {
      throw contract_error("fix_wcm_adaptive: ballot order must list every ballot once");
    }
    seen[static_cast<std::size_t>(l)] = 1;
  }

  std::vector<Score> totals(instance.sigma());
  for (int i = 0; i < m; ++i) {
    totals[static_cast<std::size_t>(i)] +=
        configuration_cost(instance, configs[static_cast<std::size_t>(i)]);
  }
  ManipulationMatrix mat = ManipulationMatrix::zeros(k, m, Validity::valid);
  for (int step = 0; step < k; ++step) {
    const int l = ballot_order[static_cast<std::size_t>(step)];
    std::vector<int> order(static_cast<std::size_t>(m));
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
      const int ja = configs[static_cast<std::size_t>(a)].indices[static_cast<std::size_t>(l)];
      const int jb = configs[static_cast<std::size_t>(b)].indices[static_cast<std::size_t>(l)];
      if (ja != jb) return ja < jb;
      const Score ta = totals[static_cast<std::size_t>(a)];
      const Score tb = totals[static_cast<std::size_t>(b)];
      if (ta != tb) return ta > tb;
      return a < b;
    });
    const Score w = instance.weights()[static_cast<std::size_t>(l)];
    for (int rank = 0; rank < m; ++rank) {
      const int i = order[static_cast<std::size_t>(rank)];
      mat.at(l, i) = rank;
      const int intended =
          configs[static_cast<std::size_t>(i)].indices[static_cast<std::size_t>(l)];
      totals[static_cast<std::size_t>(i)] +=
          (instance.alpha().at(rank) - instance.alpha().at(intended)) * w;
    }
  }
  return mat;
}

struct RoundingReport {
  ManipulationMatrix matrix;
  Score achieved = 0;
  /// Best score reached within each repeat (over the fixing menu, for
  /// sequence-form solutions).
  std::vector<Score> per_repeat;
  std::uint64_t seed = 0;
};

/// Fixing a sequence sample is orders of magnitude cheaper than solving the
/// LP, so each repeat also tries the adaptive fixing pass under several
/// ballot processing orders and keeps the best matrix of the lot. All of
/// k! orders are tried while that stays small; beyond the cap the
/// lexicographically first ones are used, deterministically.
inline constexpr int kBallotOrderCap = 24;

/// Samples and fixes `repeats` times and keeps the matrix with the smallest
/// maximum non-preferred score. Sequence-form repeats additionally run the
/// adaptive fixing pass over ballot processing orders (see kBallotOrderCap)
/// and count their best result; count-form winners are rearranged into a
/// valid matrix at the end (scores are unaffected).
inline RoundingReport round_best_of(const FractionalSolution& solution,
                                    const ProblemInstance& instance, int repeats,
                                    std::uint64_t seed) {
  if (repeats < 1) throw contract_error("round_best_of: repeats must be >= 1");
  if (static_cast<int>(solution.candidate_count()) != instance.m()) {
    throw contract_error("round_best_of: solution does not match instance");
  }

  RoundingReport report;
  report.seed = seed;
  bool have_best = false;
  for (int r = 0; r < repeats; ++r) {
    const std::uint64_t repeat_key = mix_key(seed, static_cast<std::uint64_t>(r));
    ManipulationMatrix best_mat;
    Score best_value = 0;
    if (solution.mode == Mode::ucm) {
      best_mat = fix_ucm(sample_count_configurations(solution, repeat_key), instance);
      best_value = max_nonpreferred_score(instance, best_mat);
    } else {
      const std::vector<SequenceConfiguration> configs =
          sample_sequence_configurations(solution, repeat_key);
      best_mat = fix_wcm(configs, instance);
      best_value = max_nonpreferred_score(instance, best_mat);
      std::vector<int> order(static_cast<std::size_t>(instance.k()));
      std::iota(order.begin(), order.end(), 0);
      int tried = 0;
      do {
        ManipulationMatrix mat = fix_wcm_adaptive(configs, instance, order);
        const Score value = max_nonpreferred_score(instance, mat);
        if (value < best_value) {
          best_value = value;
          best_mat = std::move(mat);
        }
      } while (++tried < kBallotOrderCap && std::next_permutation(order.begin(), order.end()));
    }
    report.per_repeat.push_back(best_value);
    if (!have_best || best_value < report.achieved) {
      have_best = true;
      report.achieved = best_value;
      report.matrix = std::move(best_mat);
    }
  }
  if (solution.mode == Mode::ucm) {
    report.matrix = rearrange_to_valid(report.matrix, instance);
  }
  return report;
}

}  // namespace votelp
