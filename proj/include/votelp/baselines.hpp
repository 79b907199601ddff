#pragma once

#include <algorithm>
#include <numeric>
#include <vector>

#include "votelp/rearrange.hpp"
#include "votelp/scoring.hpp"
#include "votelp/types.hpp"

namespace votelp {

/// The single-ballot reversal heuristic: manipulators vote one after another
/// (heaviest first), each giving the lowest score to the currently strongest
/// candidate, the next score to the next strongest, and so on. Ties in
/// current totals rank the lower candidate index as stronger.
inline ManipulationMatrix reverse(const ProblemInstance& instance) {
  const int m = instance.m();
  const int k = instance.k();

  std::vector<int> voter_order(static_cast<std::size_t>(k));
  std::iota(voter_order.begin(), voter_order.end(), 0);
  std::stable_sort(voter_order.begin(), voter_order.end(), [&](int a, int b) {
    return instance.weights()[static_cast<std::size_t>(a)] >
           instance.weights()[static_cast<std::size_t>(b)];
  });

  std::vector<Score> totals(instance.sigma());
  ManipulationMatrix mat = ManipulationMatrix::zeros(k, m, Validity::valid);
  for (int v : voter_order) {
    std::vector<int> rank(static_cast<std::size_t>(m));
    std::iota(rank.begin(), rank.end(), 0);
    std::sort(rank.begin(), rank.end(), [&](int a, int b) {
      if (totals[static_cast<std::size_t>(a)] != totals[static_cast<std::size_t>(b)]) {
        return totals[static_cast<std::size_t>(a)] > totals[static_cast<std::size_t>(b)];
      }
      return a < b;
    });
    for (int pos = 0; pos < m; ++pos) {
      const int candidate = rank[static_cast<std::size_t>(pos)];
      mat.at(v, candidate) = pos;
      totals[static_cast<std::size_t>(candidate)] +=
          instance.weights()[static_cast<std::size_t>(v)] * instance.alpha().at(pos);
    }
  }
  return mat;
}

namespace baselines_impl {

/// Shared engine of the two fit heuristics. Score copies are handed out from
/// the largest type down, bin-packing style: a copy preferably goes to a
/// candidate whose gap to the preferred candidate's final score absorbs it
/// (picking the largest gap, or largest gap per remaining slot), and when no
/// candidate can absorb it one is sacrificed - the one already closest to
/// overtaking (smallest gap resp. gap per slot). Index breaks remaining ties.
inline ManipulationMatrix fit_heuristic(const ProblemInstance& instance, bool average) {
  if (!instance.unweighted()) {
    throw contract_error("fit heuristic: requires unit weights");
  }
  const Score p_final = p_final_score(instance);  // checks sigma_p is present
  const int m = instance.m();
  const int k = instance.k();

  std::vector<Score> totals(instance.sigma());
  std::vector<int> received(static_cast<std::size_t>(m), 0);
  std::vector<std::vector<int>> assigned(static_cast<std::size_t>(m));

  // Compares gap_a / slots_a with gap_b / slots_b exactly; slots are
  // positive, so cross-multiplication avoids floating point.
  const auto ratio_less = [](Score gap_a, int slots_a, Score gap_b, int slots_b) {
    return gap_a * static_cast<Score>(slots_b) < gap_b * static_cast<Score>(slots_a);
  };

  for (int j = m - 1; j >= 0; --j) {
    const Score score = instance.alpha().at(j);
    for (int copy = 0; copy < k; ++copy) {
      int fit_pick = -1;
      int sacrifice_pick = -1;
      for (int i = 0; i < m; ++i) {
        if (received[static_cast<std::size_t>(i)] >= k) continue;
        const Score gap = p_final - totals[static_cast<std::size_t>(i)];
        const int slots = k - received[static_cast<std::size_t>(i)];
        if (gap >= score) {
          if (fit_pick < 0) {
            fit_pick = i;
          } else {
            const Score best_gap = p_final - totals[static_cast<std::size_t>(fit_pick)];
            const int best_slots = k - received[static_cast<std::size_t>(fit_pick)];
            const bool better = average ? ratio_less(best_gap, best_slots, gap, slots)
                                        : best_gap < gap;
            if (better) fit_pick = i;
          }
        }
        if (sacrifice_pick < 0) {
          sacrifice_pick = i;
        } else {
          const Score worst_gap = p_final - totals[static_cast<std::size_t>(sacrifice_pick)];
          const int worst_slots = k - received[static_cast<std::size_t>(sacrifice_pick)];
          const bool closer = average ? ratio_less(gap, slots, worst_gap, worst_slots)
                                      : gap < worst_gap;
          if (closer) sacrifice_pick = i;
        }
      }
      const int pick = fit_pick >= 0 ? fit_pick : sacrifice_pick;
      totals[static_cast<std::size_t>(pick)] += score;
      received[static_cast<std::size_t>(pick)]++;
      assigned[static_cast<std::size_t>(pick)].push_back(j);
    }
  }

  ManipulationMatrix mat = ManipulationMatrix::zeros(k, m, Validity::relaxed);
  for (int i = 0; i < m; ++i) {
    std::sort(assigned[static_cast<std::size_t>(i)].begin(),
              assigned[static_cast<std::size_t>(i)].end());
    for (int r = 0; r < k; ++r) mat.at(r, i) = assigned[static_cast<std::size_t>(i)][static_cast<std::size_t>(r)];
  }
  return mat;
}

}  // namespace baselines_impl

inline ManipulationMatrix largest_fit(const ProblemInstance& instance) {
  return baselines_impl::fit_heuristic(instance, /*average=*/false);
}

inline ManipulationMatrix average_fit(const ProblemInstance& instance) {
  return baselines_impl::fit_heuristic(instance, /*average=*/true);
}

struct BruteForceLimits {
  int max_m = 6;
  int max_k = 3;
};

struct ExactResult {
  Score t_star = 0;
  ManipulationMatrix witness;
};

namespace baselines_impl {

struct CountSearch {
  const ProblemInstance& instance;
  Score best;
  std::vector<Score> totals;
  std::vector<int> slots;                 // free ballot positions per candidate
  std::vector<std::vector<int>> counts;   // working assignment
  std::vector<std::vector<int>> best_counts;
  std::vector<Score> mass_below;          // k * sum of alpha_0..alpha_j

  explicit CountSearch(const ProblemInstance& inst) : instance(inst), best(0) {
    const int m = inst.m();
    const int k = inst.k();
    totals = inst.sigma();
    slots.assign(static_cast<std::size_t>(m), k);
    counts.assign(static_cast<std::size_t>(m), std::vector<int>(static_cast<std::size_t>(m), 0));
    mass_below.assign(static_cast<std::size_t>(m), 0);
    Score acc = 0;
    for (int j = 0; j < m; ++j) {
      acc += inst.alpha().at(j);
      mass_below[static_cast<std::size_t>(j)] = static_cast<Score>(k) * acc;
    }
  }

  // Lower bound on the best completion: every open slot earns at least the
  // bottom score, and the unplaced mass (the leftover copies of `type` plus
  // everything below it) spreads across m candidates at best evenly.
  Score optimistic_floor(int type, int copies_left) const {
    const int m = instance.m();
    Score floor = 0;
    Score occupied = 0;
    for (int i = 0; i < m; ++i) {
      floor = std::max(floor, totals[static_cast<std::size_t>(i)] +
                                  static_cast<Score>(slots[static_cast<std::size_t>(i)]) *
                                      instance.alpha().at(0));
      occupied += totals[static_cast<std::size_t>(i)];
    }
    Score pending = static_cast<Score>(copies_left) * instance.alpha().at(type);
    if (type > 0) pending += mass_below[static_cast<std::size_t>(type) - 1];
    const Score mass = occupied + pending;
    floor = std::max(floor, (mass + m - 1) / static_cast<Score>(m));
    return floor;
  }

  // Distributes the k copies of `type` over candidates (composition over
  // indices >= start), then recurses on the next type down.
  void place(int type, int start, int copies_left) {
    if (optimistic_floor(type, copies_left) >= best) return;
    if (copies_left == 0) {
      descend(type - 1);
      return;
    }
    const int m = instance.m();
    if (start >= m) return;
    int spare = 0;  // capacity behind `start` must still absorb the copies
    for (int i = start; i < m; ++i) spare += slots[static_cast<std::size_t>(i)];
    if (spare < copies_left) return;

    const int take_cap = std::min(copies_left, slots[static_cast<std::size_t>(start)]);
    const Score alpha_j = instance.alpha().at(type);
    for (int take = take_cap; take >= 0; --take) {
      totals[static_cast<std::size_t>(start)] += static_cast<Score>(take) * alpha_j;
      slots[static_cast<std::size_t>(start)] -= take;
      counts[static_cast<std::size_t>(start)][static_cast<std::size_t>(type)] += take;
      if (totals[static_cast<std::size_t>(start)] < best) {
        place(type, start + 1, copies_left - take);
      }
      totals[static_cast<std::size_t>(start)] -= static_cast<Score>(take) * alpha_j;
      slots[static_cast<std::size_t>(start)] += take;
      counts[static_cast<std::size_t>(start)][static_cast<std::size_t>(type)] -= take;
    }
  }

  void descend(int type) {
    if (type < 0) {
      Score value = 0;
      for (Score t : totals) value = std::max(value, t);
      if (value < best) {
        best = value;
        best_counts = counts;
      }
      return;
    }
    place(type, 0, instance.k());
  }
};

struct SequenceSearch {
  const ProblemInstance& instance;
  std::vector<int> voter_order;  // heaviest first; equal weights broken by index
  Score best;
  std::vector<Score> totals;
  std::vector<Score> weight_suffix;  // total weight of voters not yet placed
  std::vector<std::vector<int>> rows;  // per placed voter, in voter_order
  std::vector<std::vector<int>> best_rows;

  explicit SequenceSearch(const ProblemInstance& inst) : instance(inst), best(0) {
    const int k = inst.k();
    voter_order.resize(static_cast<std::size_t>(k));
    std::iota(voter_order.begin(), voter_order.end(), 0);
    std::stable_sort(voter_order.begin(), voter_order.end(), [&](int a, int b) {
      return inst.weights()[static_cast<std::size_t>(a)] >
             inst.weights()[static_cast<std::size_t>(b)];
    });
    totals = inst.sigma();
    weight_suffix.assign(static_cast<std::size_t>(k) + 1, 0);
    for (int v = k - 1; v >= 0; --v) {
      weight_suffix[static_cast<std::size_t>(v)] =
          weight_suffix[static_cast<std::size_t>(v) + 1] +
          inst.weights()[static_cast<std::size_t>(voter_order[static_cast<std::size_t>(v)])];
    }
    rows.assign(static_cast<std::size_t>(k),
                std::vector<int>(static_cast<std::size_t>(inst.m()), -1));
  }

  Score optimistic_floor(int placed) const {
    const int m = instance.m();
    const Score remaining = weight_suffix[static_cast<std::size_t>(placed)];
    Score floor = 0;
    Score occupied = 0;
    for (int i = 0; i < m; ++i) {
      floor = std::max(floor,
                       totals[static_cast<std::size_t>(i)] + remaining * instance.alpha().at(0));
      occupied += totals[static_cast<std::size_t>(i)];
    }
    const Score mass = occupied + remaining * instance.alpha().reduced_sum();
    floor = std::max(floor, (mass + m - 1) / static_cast<Score>(m));
    return floor;
  }

  // Fills the ballot of voter_order[v] candidate by candidate. When two
  // consecutive voters have equal weight their ballots are interchangeable,
  // so only lexicographically non-decreasing pairs are explored.
  void fill(int v, int candidate, int used_mask, bool tied_to_previous) {
    const int m = instance.m();
    const int k = instance.k();
    if (candidate == m) {
      if (v + 1 == k) {
        Score value = 0;
        for (Score t : totals) value = std::max(value, t);
        if (value < best) {
          best = value;
          best_rows = rows;
        }
        return;
      }
      if (optimistic_floor(v + 1) >= best) return;
      const bool next_tied =
          instance.weights()[static_cast<std::size_t>(voter_order[static_cast<std::size_t>(v)])] ==
          instance.weights()[static_cast<std::size_t>(voter_order[static_cast<std::size_t>(v + 1)])];
      fill(v + 1, 0, 0, next_tied);
      return;
    }
    const Score w =
        instance.weights()[static_cast<std::size_t>(voter_order[static_cast<std::size_t>(v)])];
    const int floor_index =
        tied_to_previous ? rows[static_cast<std::size_t>(v) - 1][static_cast<std::size_t>(candidate)]
                         : 0;
    for (int j = 0; j < m; ++j) {
      if (used_mask & (1 << j)) continue;
      if (j < floor_index) continue;
      const Score gain = w * instance.alpha().at(j);
      if (totals[static_cast<std::size_t>(candidate)] + gain >= best) continue;
      totals[static_cast<std::size_t>(candidate)] += gain;
      rows[static_cast<std::size_t>(v)][static_cast<std::size_t>(candidate)] = j;
      fill(v, candidate + 1, used_mask | (1 << j), tied_to_previous && j == floor_index);
      totals[static_cast<std::size_t>(candidate)] -= gain;
      rows[static_cast<std::size_t>(v)][static_cast<std::size_t>(candidate)] = -1;
    }
  }
};

}  // namespace baselines_impl

/// Exhaustive optimum of the min-max manipulation problem. Deliberately
/// refuses instances beyond the given limits; the search is exponential and
/// exists to check the polynomial machinery, not to replace it.
inline ExactResult exact_bruteforce(const ProblemInstance& instance,
                                    const BruteForceLimits& limits = {}) {
  if (instance.m() > limits.max_m || instance.k() > limits.max_k) {
    throw contract_error("exact_bruteforce: instance exceeds the search limits");
  }
  if (instance.m() > 20) {
    throw contract_error("exact_bruteforce: more than 20 candidates is not searchable");
  }

  const ManipulationMatrix start = reverse(instance);
  const Score start_value = max_nonpreferred_score(instance, start);

  if (instance.unweighted()) {
    baselines_impl::CountSearch search(instance);
    search.best = start_value;
    search.descend(instance.m() - 1);
    if (search.best_counts.empty()) return {start_value, start};

    ManipulationMatrix relaxed = ManipulationMatrix::zeros(instance.k(), instance.m(),
                                                           Validity::relaxed);
    for (int i = 0; i < instance.m(); ++i) {
      int row = 0;
      for (int j = 0; j < instance.m(); ++j) {
        for (int c = 0; c < search.best_counts[static_cast<std::size_t>(i)]
                                              [static_cast<std::size_t>(j)]; ++c) {
          relaxed.at(row++, i) = j;
        }
      }
    }
    return {search.best, rearrange_to_valid(relaxed, instance)};
  }

  baselines_impl::SequenceSearch search(instance);
  search.best = start_value;
  if (search.optimistic_floor(0) < search.best) search.fill(0, 0, 0, false);
  if (search.best_rows.empty()) return {start_value, start};

  ManipulationMatrix mat = ManipulationMatrix::zeros(instance.k(), instance.m(), Validity::valid);
  for (int v = 0; v < instance.k(); ++v) {
    const int voter = search.voter_order[static_cast<std::size_t>(v)];
    for (int i = 0; i < instance.m(); ++i) {
      mat.at(voter, i) = search.best_rows[static_cast<std::size_t>(v)][static_cast<std::size_t>(i)];
    }
  }
  return {search.best, mat};
}

struct LowerBoundFamily {
  ProblemInstance instance;
  ManipulationMatrix strategy;  // relaxed; rearrangeable without score change
};

/// The m = 3t, k = 3, zero-sigma Borda family whose hand-built strategy
/// reaches 5m/3 - 2 while single-ballot reversal is stuck at 2(m-1). The
/// strategy deals the descending sequence of score indices (each repeated
/// three times) forward, backward, and forward again across the candidates.
inline LowerBoundFamily lower_bound_family(int t) {
  if (t < 1) throw contract_error("lower_bound_family: t must be >= 1");
  const int m = 3 * t;
  ProblemInstance instance(ScoringVector::borda(m),
                           std::vector<Score>(static_cast<std::size_t>(m), 0),
                           std::vector<Score>(3, 1));

  const auto dealt = [m](int position) { return m - 1 - position / 3; };
  ManipulationMatrix strategy = ManipulationMatrix::zeros(3, m, Validity::relaxed);
  for (int i = 0; i < m; ++i) {
    strategy.at(0, i) = dealt(i);
    strategy.at(1, i) = dealt(2 * m - 1 - i);
    strategy.at(2, i) = dealt(2 * m + i);
  }
  return {std::move(instance), std::move(strategy)};
}

}  // namespace votelp
