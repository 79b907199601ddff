#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace votelp {

/// Exact integer score type; all scoring arithmetic stays integral.
using Score = long long;

/// Raised when a caller violates a documented precondition.
struct contract_error : std::logic_error {
  using std::logic_error::logic_error;
};

/// Raised when a solver cannot certify a correct answer (it never guesses).
struct solver_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Mode { ucm, wcm };

inline const char* mode_name(Mode mode) {
  return mode == Mode::ucm ? "ucm" : "wcm";
}

/// Score vector alpha_0 <= alpha_1 <= ... <= alpha_m of a positional scoring
/// rule over m+1 candidates. The preferred candidate collects alpha_m from
/// every manipulator; the reduced view alpha_0..alpha_{m-1} is what remains
/// to be distributed among the other m candidates.
class ScoringVector {
 public:
  explicit ScoringVector(std::vector<Score> entries) : entries_(std::move(entries)) {
    if (entries_.size() < 2) {
      throw contract_error("ScoringVector: need at least two entries");
    }
    for (std::size_t i = 0; i < entries_.size(); ++i) {
      if (entries_[i] < 0) {
        throw contract_error("ScoringVector: entries must be non-negative");
      }
      if (i > 0 && entries_[i] < entries_[i - 1]) {
        throw contract_error("ScoringVector: entries must be non-decreasing");
      }
    }
  }

  /// The Borda vector (0, 1, ..., m).
  static ScoringVector borda(int m) {
    if (m < 1) throw contract_error("ScoringVector::borda: m must be >= 1");
    std::vector<Score> v(static_cast<std::size_t>(m) + 1);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = static_cast<Score>(i);
    return ScoringVector(std::move(v));
  }

  /// Number of reduced score types (= number of non-preferred candidates m).
  int reduced_size() const { return static_cast<int>(entries_.size()) - 1; }

  Score at(int j) const { return entries_[static_cast<std::size_t>(j)]; }

  /// alpha_m, the score every manipulator hands the preferred candidate.
  Score top() const { return entries_.back(); }

  /// Largest reduced score alpha_{m-1}.
  Score reduced_max() const { return entries_[entries_.size() - 2]; }

  const std::vector<Score>& entries() const { return entries_; }

  /// Sum of the reduced entries alpha_0 + ... + alpha_{m-1}.
  Score reduced_sum() const {
    Score s = 0;
    for (int j = 0; j < reduced_size(); ++j) s += at(j);
    return s;
  }

  friend bool operator==(const ScoringVector& a, const ScoringVector& b) {
    return a.entries_ == b.entries_;
  }

 private:
  std::vector<Score> entries_;
};

/// Reduced min-max manipulation instance: initial scores sigma_1..sigma_m of
/// the non-preferred candidates, manipulator weights w_1..w_k, the rule
/// vector, and optionally sigma_0 (the preferred candidate's initial score).
class ProblemInstance {
 public:
  ProblemInstance(ScoringVector alpha, std::vector<Score> sigma,
                  std::vector<Score> weights,
                  std::optional<Score> sigma_p = std::nullopt)
      : alpha_(std::move(alpha)),
        sigma_(std::move(sigma)),
        weights_(std::move(weights)),
        sigma_p_(sigma_p) {
    if (sigma_.empty()) throw contract_error("ProblemInstance: m must be >= 1");
    if (weights_.empty()) throw contract_error("ProblemInstance: k must be >= 1");
    if (alpha_.reduced_size() != static_cast<int>(sigma_.size())) {
      throw contract_error("ProblemInstance: alpha must have m+1 entries");
    }
    for (Score s : sigma_) {
      if (s < 0) throw contract_error("ProblemInstance: sigma must be non-negative");
    }
    for (Score w : weights_) {
      if (w < 1) throw contract_error("ProblemInstance: weights must be positive");
    }
    if (sigma_p_ && *sigma_p_ < 0) {
      throw contract_error("ProblemInstance: sigma_p must be non-negative");
    }
  }

  const ScoringVector& alpha() const { return alpha_; }
  const std::vector<Score>& sigma() const { return sigma_; }
  const std::vector<Score>& weights() const { return weights_; }
  const std::optional<Score>& sigma_p() const { return sigma_p_; }

  int m() const { return static_cast<int>(sigma_.size()); }
  int k() const { return static_cast<int>(weights_.size()); }

  /// W = sum of manipulator weights.
  Score total_weight() const {
    Score s = 0;
    for (Score w : weights_) s += w;
    return s;
  }

  bool unweighted() const {
    for (Score w : weights_) {
      if (w != 1) return false;
    }
    return true;
  }

 private:
  ScoringVector alpha_;
  std::vector<Score> sigma_;
  std::vector<Score> weights_;
  std::optional<Score> sigma_p_;
};

/// UCM configuration: counts[j] = number of alpha_j scores a candidate
/// receives; counts sum to k.
struct CountConfiguration {
  std::vector<int> counts;

  friend bool operator==(const CountConfiguration& a, const CountConfiguration& b) {
    return a.counts == b.counts;
  }
};

/// WCM configuration: indices[l] = j means manipulator l awards alpha_j.
struct SequenceConfiguration {
  std::vector<int> indices;

  friend bool operator==(const SequenceConfiguration& a, const SequenceConfiguration& b) {
    return a.indices == b.indices;
  }
};

inline Score configuration_cost(const ScoringVector& alpha, const CountConfiguration& config) {
  Score cost = 0;
  for (std::size_t j = 0; j < config.counts.size(); ++j) {
    cost += static_cast<Score>(config.counts[j]) * alpha.at(static_cast<int>(j));
  }
  return cost;
}

inline Score configuration_cost(const ProblemInstance& instance,
                                const SequenceConfiguration& config) {
  Score cost = 0;
  for (std::size_t l = 0; l < config.indices.size(); ++l) {
    cost += instance.weights()[l] * instance.alpha().at(config.indices[l]);
  }
  return cost;
}

enum class Validity { relaxed, valid };

/// k x m matrix of score indices: entry (l, i) is the index of the score
/// manipulator l gives candidate i. "valid" rows are permutations of
/// {0..m-1}; "relaxed" only promises every score index appears exactly k
/// times overall with k entries per column.
struct ManipulationMatrix {
  int rows = 0;  // k
  int cols = 0;  // m
  std::vector<int> entries;  // row-major
  Validity validity = Validity::relaxed;

  static ManipulationMatrix zeros(int rows, int cols, Validity validity) {
    ManipulationMatrix mat;
    mat.rows = rows;
    mat.cols = cols;
    mat.entries.assign(static_cast<std::size_t>(rows) * cols, 0);
    mat.validity = validity;
    return mat;
  }

  int at(int row, int col) const {
    return entries[static_cast<std::size_t>(row) * cols + col];
  }
  int& at(int row, int col) {
    return entries[static_cast<std::size_t>(row) * cols + col];
  }

  /// Multiset of score indices received by one candidate, as counts per type.
  std::vector<int> column_counts(int col) const {
    std::vector<int> counts(static_cast<std::size_t>(cols), 0);
    for (int r = 0; r < rows; ++r) counts[static_cast<std::size_t>(at(r, col))]++;
    return counts;
  }
};

/// True iff every score index appears exactly `rows` times in total and all
/// entries are in range. (Columns have exactly `rows` entries by layout.)
inline bool satisfies_relaxed(const ManipulationMatrix& mat) {
  if (mat.rows < 1 || mat.cols < 1) return false;
  std::vector<int> histogram(static_cast<std::size_t>(mat.cols), 0);
  for (int e : mat.entries) {
    if (e < 0 || e >= mat.cols) return false;
    histogram[static_cast<std::size_t>(e)]++;
  }
  for (int h : histogram) {
    if (h != mat.rows) return false;
  }
  return true;
}

/// True iff every row is a permutation of {0..m-1}.
inline bool satisfies_valid(const ManipulationMatrix& mat) {
  if (mat.rows < 1 || mat.cols < 1) return false;
  std::vector<char> seen(static_cast<std::size_t>(mat.cols));
  for (int r = 0; r < mat.rows; ++r) {
    std::fill(seen.begin(), seen.end(), 0);
    for (int c = 0; c < mat.cols; ++c) {
      int e = mat.at(r, c);
      if (e < 0 || e >= mat.cols || seen[static_cast<std::size_t>(e)]) return false;
      seen[static_cast<std::size_t>(e)] = 1;
    }
  }
  return true;
}

struct WeightedCountConfiguration {
  CountConfiguration configuration;
  double weight = 0.0;
};

struct WeightedSequenceConfiguration {
  SequenceConfiguration configuration;
  double weight = 0.0;
};

/// Fractional configuration-LP solution at bound T: per candidate, the
/// configurations carrying positive weight. Exactly one of the two support
/// tables is populated, according to `mode`.
struct FractionalSolution {
  Score bound = 0;
  Mode mode = Mode::ucm;
  std::vector<std::vector<WeightedCountConfiguration>> count_support;
  std::vector<std::vector<WeightedSequenceConfiguration>> sequence_support;

  std::size_t candidate_count() const {
    return mode == Mode::ucm ? count_support.size() : sequence_support.size();
  }
};

}  // namespace votelp
