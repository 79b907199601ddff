#pragma once

#include <algorithm>
#include <functional>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "votelp/baselines.hpp"
#include "votelp/knapsack.hpp"
#include "votelp/scoring.hpp"
#include "votelp/simplex.hpp"
#include "votelp/types.hpp"

namespace votelp {

/// Dual variables of the configuration LP. `y` has one entry per candidate.
/// For count configurations `z` has one entry per score type; for sequence
/// configurations it is indexed by (type, manipulator) flattened as
/// type * k + manipulator.
struct DualPoint {
  std::vector<double> y;
  std::vector<double> z;
};

struct ClpTrace {
  Score bound = 0;
  int iteration = 0;
  int columns_added = 0;
  std::size_t pool_size = 0;
  /// Optimal uniform coverage slack of the restricted master; the bound is
  /// accepted when pricing exhausts and this clears -eps_lp.
  double coverage_slack = 0.0;
};

struct ClpOptions {
  /// Tolerance on normalized LP objectives when classifying feasibility.
  double eps_lp = 1e-6;
  /// Per-candidate column cap is factor * m * k; exceeding it aborts.
  int column_cap_factor = 50;
  std::function<void(const ClpTrace&)> trace;
};

/// Generated columns of the configuration LP, deduplicated per candidate.
class ColumnPool {
 public:
  ColumnPool(Mode mode, int m) : mode_(mode) {
    count_columns_.resize(static_cast<std::size_t>(m));
    sequence_columns_.resize(static_cast<std::size_t>(m));
    seen_.resize(static_cast<std::size_t>(m));
  }

  bool insert(int candidate, const CountConfiguration& config) {
    if (!seen_[static_cast<std::size_t>(candidate)].insert(config.counts).second) return false;
    count_columns_[static_cast<std::size_t>(candidate)].push_back(config);
    return true;
  }

  bool insert(int candidate, const SequenceConfiguration& config) {
    if (!seen_[static_cast<std::size_t>(candidate)].insert(config.indices).second) return false;
    sequence_columns_[static_cast<std::size_t>(candidate)].push_back(config);
    return true;
  }

  Mode mode() const { return mode_; }
  const std::vector<std::vector<CountConfiguration>>& count_columns() const {
    return count_columns_;
  }
  const std::vector<std::vector<SequenceConfiguration>>& sequence_columns() const {
    return sequence_columns_;
  }

  std::size_t candidate_size(int candidate) const {
    return seen_[static_cast<std::size_t>(candidate)].size();
  }
  std::size_t total_size() const {
    std::size_t total = 0;
    for (const auto& s : seen_) total += s.size();
    return total;
  }

 private:
  Mode mode_;
  std::vector<std::vector<CountConfiguration>> count_columns_;
  std::vector<std::vector<SequenceConfiguration>> sequence_columns_;
  std::vector<std::set<std::vector<int>>> seen_;
};

/// Separation oracle, count form: for each candidate, the most violated
/// dual constraint over configurations of cost at most T - sigma_i, if one
/// is violated at all. At most one column per candidate per call.
inline std::vector<std::pair<int, CountConfiguration>> separate_ucm(
    const ProblemInstance& instance, Score bound, const DualPoint& duals) {
  const int m = instance.m();
  if (static_cast<int>(duals.y.size()) != m || static_cast<int>(duals.z.size()) != m) {
    throw contract_error("separate_ucm: dual dimensions do not match instance");
  }
  std::vector<Score> reduced_alpha(instance.alpha().entries().begin(),
                                   instance.alpha().entries().end() - 1);
  std::vector<std::pair<int, CountConfiguration>> found;
  for (int i = 0; i < m; ++i) {
    const Score slack = bound - instance.sigma()[static_cast<std::size_t>(i)];
    const Score cap = std::min<Score>(
        static_cast<Score>(instance.k()) * instance.alpha().reduced_max(), slack);
    if (cap < 0) continue;
    MultisetKnapsackQuery query;
    query.values = duals.z;
    query.weights = reduced_alpha;
    query.weight_cap = cap;
    query.value_floor = duals.y[static_cast<std::size_t>(i)];
    query.size = instance.k();
    if (auto witness = solve_multiset(query)) found.emplace_back(i, std::move(*witness));
  }
  return found;
}

/// Separation oracle, sequence form: locations are manipulators, the budget
/// accounts for weights.
inline std::vector<std::pair<int, SequenceConfiguration>> separate_wcm(
    const ProblemInstance& instance, Score bound, const DualPoint& duals) {
  const int m = instance.m();
  const int k = instance.k();
  if (static_cast<int>(duals.y.size()) != m ||
      static_cast<int>(duals.z.size()) != static_cast<std::size_t>(m) * k) {
    throw contract_error("separate_wcm: dual dimensions do not match instance");
  }
  std::vector<Score> reduced_alpha(instance.alpha().entries().begin(),
                                   instance.alpha().entries().end() - 1);
  std::vector<std::vector<double>> values(static_cast<std::size_t>(m),
                                          std::vector<double>(static_cast<std::size_t>(k)));
  for (int j = 0; j < m; ++j) {
    for (int l = 0; l < k; ++l) {
      values[static_cast<std::size_t>(j)][static_cast<std::size_t>(l)] =
          duals.z[static_cast<std::size_t>(j) * k + l];
    }
  }
  std::vector<std::pair<int, SequenceConfiguration>> found;
  for (int i = 0; i < m; ++i) {
    const Score slack = bound - instance.sigma()[static_cast<std::size_t>(i)];
    const Score cap =
        std::min<Score>(instance.total_weight() * instance.alpha().reduced_max(), slack);
    if (cap < 0) continue;
    SequenceKnapsackQuery query;
    query.values = values;
    query.costs = reduced_alpha;
    query.penalties = instance.weights();
    query.cost_cap = cap;
    query.value_floor = duals.y[static_cast<std::size_t>(i)];
    if (auto witness = solve_sequence(query)) found.emplace_back(i, std::move(*witness));
  }
  return found;
}

struct ClpFeasibility {
  bool feasible = false;
  std::optional<FractionalSolution> solution;  // populated iff feasible
};

namespace clp_impl {

inline void check_mode(const ProblemInstance& instance, Mode mode, const char* op) {
  if (mode == Mode::ucm && !instance.unweighted()) {
    throw contract_error(std::string(op) + ": count mode requires unit weights");
  }
}

struct RestrictedLp {
  double slack = 0.0;           // optimal uniform coverage slack s*
  DualPoint duals;              // prices for the separation oracles, >= 0
  FractionalSolution solution;  // pooled columns with positive weight
};

/// Solves the restricted master problem over the affordable pooled columns:
/// maximize the uniform coverage slack s subject to one unit of mass per
/// candidate and coverage >= demand + s. The bound is feasible for the
/// current pool exactly when s* >= 0, and the row duals price the knapsack
/// separation (candidate rows give y, coverage rows give z up to sign).
inline RestrictedLp solve_restricted_primal(const ProblemInstance& instance,
                                            const ColumnPool& pool, Score bound) {
  const int m = instance.m();
  const int k = instance.k();
  const bool count_form = pool.mode() == Mode::ucm;
  const std::size_t coverage_rows =
      count_form ? static_cast<std::size_t>(m) : static_cast<std::size_t>(m) * k;

  // Only columns the candidate can pay for at this bound enter the LP; the
  // pool may carry columns generated for other bounds.
  std::vector<std::pair<int, std::size_t>> columns;  // (candidate, index in pool list)
  for (int i = 0; i < m; ++i) {
    const Score budget = bound - instance.sigma()[static_cast<std::size_t>(i)];
    if (count_form) {
      const auto& list = pool.count_columns()[static_cast<std::size_t>(i)];
      for (std::size_t c = 0; c < list.size(); ++c) {
        if (configuration_cost(instance.alpha(), list[c]) <= budget) columns.emplace_back(i, c);
      }
    } else {
      const auto& list = pool.sequence_columns()[static_cast<std::size_t>(i)];
      for (std::size_t c = 0; c < list.size(); ++c) {
        if (configuration_cost(instance, list[c]) <= budget) columns.emplace_back(i, c);
      }
    }
  }

  const std::size_t nx = columns.size();
  LinearProgramSpec lp;
  lp.sense = LpSense::maximize;
  for (std::size_t c = 0; c < nx; ++c) lp.add_variable(0.0, 0.0, kLpInfinity);
  lp.add_variable(1.0, -kLpInfinity, kLpInfinity);  // s

  for (int i = 0; i < m; ++i) {
    std::vector<double> row(nx + 1, 0.0);
    for (std::size_t c = 0; c < nx; ++c) {
      if (columns[c].first == i) row[c] = 1.0;
    }
    lp.add_constraint(std::move(row), LpRelation::less_equal, 1.0);
  }
  for (std::size_t cov = 0; cov < coverage_rows; ++cov) {
    std::vector<double> row(nx + 1, 0.0);
    for (std::size_t c = 0; c < nx; ++c) {
      const auto [i, idx] = columns[c];
      if (count_form) {
        row[c] = static_cast<double>(
            pool.count_columns()[static_cast<std::size_t>(i)][idx].counts[cov]);
      } else {
        const int j = static_cast<int>(cov) / k;
        const int l = static_cast<int>(cov) % k;
        row[c] = pool.sequence_columns()[static_cast<std::size_t>(i)][idx]
                             .indices[static_cast<std::size_t>(l)] == j
                     ? 1.0
                     : 0.0;
      }
    }
    row[nx] = -1.0;
    lp.add_constraint(std::move(row), LpRelation::greater_equal,
                      count_form ? static_cast<double>(k) : 1.0);
  }

  LpResult result = solve_lp(lp);
  if (result.status != LpStatus::optimal) {
    throw solver_error("clp_feasible: restricted primal LP did not solve");
  }

  RestrictedLp out;
  out.slack = result.objective_value;
  out.duals.y.resize(static_cast<std::size_t>(m));
  out.duals.z.resize(coverage_rows);
  for (int i = 0; i < m; ++i) {
    out.duals.y[static_cast<std::size_t>(i)] =
        std::max(result.duals[static_cast<std::size_t>(i)], 0.0);
  }
  for (std::size_t cov = 0; cov < coverage_rows; ++cov) {
    out.duals.z[cov] = std::max(-result.duals[static_cast<std::size_t>(m) + cov], 0.0);
  }

  out.solution.bound = bound;
  out.solution.mode = pool.mode();
  out.solution.count_support.resize(static_cast<std::size_t>(m));
  out.solution.sequence_support.resize(static_cast<std::size_t>(m));
  for (std::size_t c = 0; c < nx; ++c) {
    const double weight = std::max(result.solution[c], 0.0);
    if (weight <= 1e-12) continue;
    const auto [i, idx] = columns[c];
    if (count_form) {
      out.solution.count_support[static_cast<std::size_t>(i)].push_back(
          {pool.count_columns()[static_cast<std::size_t>(i)][idx], weight});
    } else {
      out.solution.sequence_support[static_cast<std::size_t>(i)].push_back(
          {pool.sequence_columns()[static_cast<std::size_t>(i)][idx], weight});
    }
  }
  return out;
}

/// Column generation against a caller-owned pool, so a binary search can keep
/// the columns it has already paid for across probes.
inline ClpFeasibility clp_feasible_with_pool(const ProblemInstance& instance, Score bound,
                                             Mode mode, const ClpOptions& options,
                                             ColumnPool& pool) {
  const int m = instance.m();
  const int k = instance.k();
  const std::size_t cap = static_cast<std::size_t>(options.column_cap_factor) *
                          static_cast<std::size_t>(m) * static_cast<std::size_t>(k);

  for (int iteration = 0;; ++iteration) {
    RestrictedLp master = solve_restricted_primal(instance, pool, bound);

    int violated = 0;
    int added = 0;
    if (mode == Mode::ucm) {
      for (auto& [i, config] : separate_ucm(instance, bound, master.duals)) {
        ++violated;
        if (pool.insert(i, config)) ++added;
      }
    } else {
      for (auto& [i, config] : separate_wcm(instance, bound, master.duals)) {
        ++violated;
        if (pool.insert(i, config)) ++added;
      }
    }
    if (options.trace) {
      options.trace({bound, iteration, added, pool.total_size(), master.slack});
    }

    if (violated == 0) {
      // No column prices, so the master's slack is the optimum over every
      // affordable column: its sign settles feasibility, and an accepted
      // solution is the most-covered one available, which rounds best.
      if (master.slack >= -options.eps_lp) return {true, std::move(master.solution)};
      return {false, std::nullopt};
    }
    if (added == 0) {
      // An affordable pooled column cannot be violated at the master's own
      // optimum; if the oracle claims one, the arithmetic has gone bad.
      throw solver_error("clp_feasible: separation re-issued pooled columns");
    }
    for (int i = 0; i < m; ++i) {
      if (pool.candidate_size(i) > cap) {
        throw solver_error("clp_feasible: column pool exceeded its cap");
      }
    }
  }
}

}  // namespace clp_impl

/// Decides whether final score bound T admits a fractional configuration
/// assignment, by column generation with the knapsack pricing oracles run to
/// exhaustion. Feasible outcomes carry the coverage-maximizing fractional
/// solution; infeasibility is certified by a priced-out dual point.
inline ClpFeasibility clp_feasible(const ProblemInstance& instance, Score bound, Mode mode,
                                   const ClpOptions& options = {}) {
  clp_impl::check_mode(instance, mode, "clp_feasible");
  ColumnPool pool(mode, instance.m());
  return clp_impl::clp_feasible_with_pool(instance, bound, mode, options, pool);
}

struct ClpOutcome {
  Score t_clp = 0;
  FractionalSolution solution;
};

/// Smallest integer bound the configuration LP accepts, by binary search.
/// The bracket is safe on both ends: no assignment can beat the score-mass
/// average or deny every candidate the bottom score, and the single-ballot
/// reversal strategy is integral, hence LP-feasible. All probes share one
/// column pool (columns priced for one bound stay useful for the others;
/// unaffordable ones are filtered out per probe), seeded with the reversal
/// strategy's own columns.
inline ClpOutcome min_feasible_T(const ProblemInstance& instance, Mode mode,
                                 const ClpOptions& options = {}) {
  clp_impl::check_mode(instance, mode, "min_feasible_T");

  const int m = instance.m();
  const int k = instance.k();
  const Score total_weight = instance.total_weight();
  Score mass = total_weight * instance.alpha().reduced_sum();
  for (Score s : instance.sigma()) mass += s;
  const Score mass_floor = (mass + m - 1) / static_cast<Score>(m);
  const Score bottom_floor =
      *std::max_element(instance.sigma().begin(), instance.sigma().end()) +
      total_weight * instance.alpha().at(0);
  Score lo = std::max(mass_floor, bottom_floor);

  const ManipulationMatrix reversal = reverse(instance);
  Score hi = max_nonpreferred_score(instance, reversal);

  ColumnPool pool(mode, m);
  for (int i = 0; i < m; ++i) {
    if (mode == Mode::ucm) {
      pool.insert(i, CountConfiguration{reversal.column_counts(i)});
    } else {
      std::vector<int> indices(static_cast<std::size_t>(k));
      for (int l = 0; l < k; ++l) indices[static_cast<std::size_t>(l)] = reversal.at(l, i);
      pool.insert(i, SequenceConfiguration{std::move(indices)});
    }
  }

  std::optional<FractionalSolution> best;
  while (lo < hi) {
    const Score mid = lo + (hi - lo) / 2;
    ClpFeasibility probe = clp_impl::clp_feasible_with_pool(instance, mid, mode, options, pool);
    if (probe.feasible) {
      hi = mid;
      best = std::move(probe.solution);
    } else {
      lo = mid + 1;
    }
  }
  if (!best || best->bound != lo) {
    ClpFeasibility probe = clp_impl::clp_feasible_with_pool(instance, lo, mode, options, pool);
    if (!probe.feasible) {
      throw solver_error("min_feasible_T: search bracket was not feasible at its endpoint");
    }
    best = std::move(probe.solution);
  }
  return {lo, std::move(*best)};
}

/// Optimum of the assignment-style relaxation with per-(candidate, type)
/// variables. Kept around as the comparison point whose integrality gap the
/// configuration LP closes.
inline double natural_lp_value(const ProblemInstance& instance) {
  if (!instance.unweighted()) {
    throw contract_error("natural_lp_value: requires unit weights");
  }
  const int m = instance.m();
  const int k = instance.k();
  const std::size_t nx = static_cast<std::size_t>(m) * m;

  LinearProgramSpec lp;
  lp.sense = LpSense::minimize;
  for (std::size_t c = 0; c < nx; ++c) lp.add_variable(0.0, 0.0, static_cast<double>(k));
  lp.add_variable(1.0, 0.0, kLpInfinity);  // T

  for (int j = 0; j < m; ++j) {  // every score type is handed out k times
    std::vector<double> row(nx + 1, 0.0);
    for (int i = 0; i < m; ++i) row[static_cast<std::size_t>(i) * m + j] = 1.0;
    lp.add_constraint(std::move(row), LpRelation::equal, static_cast<double>(k));
  }
  for (int i = 0; i < m; ++i) {  // every candidate receives k scores
    std::vector<double> row(nx + 1, 0.0);
    for (int j = 0; j < m; ++j) row[static_cast<std::size_t>(i) * m + j] = 1.0;
    lp.add_constraint(std::move(row), LpRelation::equal, static_cast<double>(k));
  }
  for (int i = 0; i < m; ++i) {  // final scores stay below T
    std::vector<double> row(nx + 1, 0.0);
    for (int j = 0; j < m; ++j) {
      row[static_cast<std::size_t>(i) * m + j] = static_cast<double>(instance.alpha().at(j));
    }
    row[nx] = -1.0;
    lp.add_constraint(std::move(row), LpRelation::less_equal,
                      -static_cast<double>(instance.sigma()[static_cast<std::size_t>(i)]));
  }

  const LpResult result = solve_lp(lp);
  if (result.status != LpStatus::optimal) {
    throw solver_error("natural_lp_value: LP did not solve");
  }
  return result.objective_value;
}

}  // namespace votelp
