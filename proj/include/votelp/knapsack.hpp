#pragma once

#include <limits>
#include <optional>
#include <vector>

#include "votelp/types.hpp"

namespace votelp {

/// Slack applied to the strict "value > floor" test of both separation
/// oracles, so LP round-off cannot manufacture spurious columns.
inline constexpr double kValueFloorSlack = 1e-7;

/// Guard against callers feeding astronomically large budgets into the
/// pseudo-polynomial tables.
inline constexpr std::size_t kMaxKnapsackCells = 100'000'000;

namespace detail {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

inline void check_table_size(std::size_t budget, std::size_t size, const char* op) {
  if ((budget + 1) * (size + 1) > kMaxKnapsackCells) {
    throw solver_error(std::string(op) + ": budget too large for pseudo-polynomial table");
  }
}

}  // namespace detail

/// Pick exactly `size` items with repetition from items of value values[j]
/// and weight weights[j], maximizing total value subject to total weight
/// <= weight_cap. A witness is returned only when its value strictly
/// exceeds value_floor (plus slack).
struct MultisetKnapsackQuery {
  std::vector<double> values;
  std::vector<Score> weights;
  Score weight_cap = 0;
  double value_floor = 0.0;
  int size = 1;
};

inline std::optional<CountConfiguration> solve_multiset(const MultisetKnapsackQuery& query) {
  const int m = static_cast<int>(query.values.size());
  if (m == 0 || query.weights.size() != query.values.size()) {
    throw contract_error("solve_multiset: values and weights must be non-empty and aligned");
  }
  if (query.size < 1) throw contract_error("solve_multiset: size must be >= 1");
  if (query.weight_cap < 0) throw contract_error("solve_multiset: weight_cap must be >= 0");
  for (Score w : query.weights) {
    if (w < 0) throw contract_error("solve_multiset: item weights must be >= 0");
  }

  const std::size_t cap = static_cast<std::size_t>(query.weight_cap);
  const std::size_t k = static_cast<std::size_t>(query.size);
  detail::check_table_size(cap, k, "solve_multiset");

  // best[w][l] = max value of an l-multiset with weight at most w; choice
  // remembers the item added last. Items are scanned in ascending index and
  // replaced only on strict improvement, so ties resolve to the smallest
  // index.
  std::vector<std::vector<double>> best(cap + 1, std::vector<double>(k + 1, detail::kNegInf));
  std::vector<std::vector<int>> choice(cap + 1, std::vector<int>(k + 1, -1));
  for (std::size_t w = 0; w <= cap; ++w) best[w][0] = 0.0;

  for (std::size_t l = 1; l <= k; ++l) {
    for (std::size_t w = 0; w <= cap; ++w) {
      for (int j = 0; j < m; ++j) {
        const Score wj = query.weights[static_cast<std::size_t>(j)];
        if (static_cast<std::size_t>(wj) > w) continue;
        const double below = best[w - static_cast<std::size_t>(wj)][l - 1];
        if (below == detail::kNegInf) continue;
        const double candidate = query.values[static_cast<std::size_t>(j)] + below;
        if (candidate > best[w][l]) {
          best[w][l] = candidate;
          choice[w][l] = j;
        }
      }
    }
  }

  if (!(best[cap][k] > query.value_floor + kValueFloorSlack)) return std::nullopt;

  CountConfiguration witness;
  witness.counts.assign(static_cast<std::size_t>(m), 0);
  std::size_t w = cap;
  for (std::size_t l = k; l > 0; --l) {
    const int j = choice[w][l];
    witness.counts[static_cast<std::size_t>(j)]++;
    w -= static_cast<std::size_t>(query.weights[static_cast<std::size_t>(j)]);
  }
  return witness;
}

/// Pick one item per location l = 0..k-1 (values may depend on the
/// location), maximizing total value subject to
/// sum_l penalties[l] * costs[item_l] <= cost_cap.
struct SequenceKnapsackQuery {
  std::vector<std::vector<double>> values;  // values[j][l], item j at location l
  std::vector<Score> costs;                 // per item
  std::vector<Score> penalties;             // per location, >= 1
  Score cost_cap = 0;
  double value_floor = 0.0;
};

inline std::optional<SequenceConfiguration> solve_sequence(const SequenceKnapsackQuery& query) {
  const int m = static_cast<int>(query.values.size());
  const int k = static_cast<int>(query.penalties.size());
  if (m == 0 || k == 0) {
    throw contract_error("solve_sequence: need at least one item and one location");
  }
  if (query.costs.size() != query.values.size()) {
    throw contract_error("solve_sequence: values and costs must be aligned");
  }
  for (const auto& row : query.values) {
    if (static_cast<int>(row.size()) != k) {
      throw contract_error("solve_sequence: every value row needs one entry per location");
    }
  }
  if (query.cost_cap < 0) throw contract_error("solve_sequence: cost_cap must be >= 0");
  for (Score c : query.costs) {
    if (c < 0) throw contract_error("solve_sequence: item costs must be >= 0");
  }
  for (Score p : query.penalties) {
    if (p < 1) throw contract_error("solve_sequence: penalties must be >= 1");
  }

  const std::size_t cap = static_cast<std::size_t>(query.cost_cap);
  detail::check_table_size(cap, static_cast<std::size_t>(k), "solve_sequence");

  // best[b][l] = max value of filling locations 0..l-1 with budget at most b.
  std::vector<std::vector<double>> best(cap + 1,
                                        std::vector<double>(static_cast<std::size_t>(k) + 1,
                                                            detail::kNegInf));
  std::vector<std::vector<int>> choice(cap + 1,
                                       std::vector<int>(static_cast<std::size_t>(k) + 1, -1));
  for (std::size_t b = 0; b <= cap; ++b) best[b][0] = 0.0;

  for (int l = 1; l <= k; ++l) {
    const Score penalty = query.penalties[static_cast<std::size_t>(l - 1)];
    for (std::size_t b = 0; b <= cap; ++b) {
      for (int j = 0; j < m; ++j) {
        const Score spent = penalty * query.costs[static_cast<std::size_t>(j)];
        if (static_cast<std::size_t>(spent) > b) continue;
        const double below = best[b - static_cast<std::size_t>(spent)][static_cast<std::size_t>(l - 1)];
        if (below == detail::kNegInf) continue;
        const double candidate =
            query.values[static_cast<std::size_t>(j)][static_cast<std::size_t>(l - 1)] + below;
        if (candidate > best[b][static_cast<std::size_t>(l)]) {
          best[b][static_cast<std::size_t>(l)] = candidate;
          choice[b][static_cast<std::size_t>(l)] = j;
        }
      }
    }
  }

  if (!(best[cap][static_cast<std::size_t>(k)] > query.value_floor + kValueFloorSlack)) {
    return std::nullopt;
  }

  SequenceConfiguration witness;
  witness.indices.assign(static_cast<std::size_t>(k), -1);
  std::size_t b = cap;
  for (int l = k; l > 0; --l) {
    const int j = choice[b][static_cast<std::size_t>(l)];
    witness.indices[static_cast<std::size_t>(l - 1)] = j;
    b -= static_cast<std::size_t>(query.penalties[static_cast<std::size_t>(l - 1)] *
                                  query.costs[static_cast<std::size_t>(j)]);
  }
  return witness;
}

}  // namespace votelp
