#pragma once

#include <Eigen/Dense>

#include <vector>

#include "ctmr/errors.hpp"
#include "ctmr/tolerances.hpp"

namespace ctmr {

// ============================================================================
// Model types
// ============================================================================

/// Transition-rate matrix of a finite-state continuous-time Markov process.
///
/// Invariants (enforced by validate_generator): the matrix is square with at
/// least two states, every off-diagonal entry is a nonnegative rate, and each
/// diagonal entry equals the negated sum of its off-diagonal row, so rows sum
/// to zero. Rates are per hour throughout the library. States with zero exit
/// rate (absorbing) are permitted.
struct Generator {
  Eigen::MatrixXd rates;

  int size() const { return static_cast<int>(rates.rows()); }

  /// Total rate of leaving state i; nonnegative, zero for absorbing states.
  double exit_rate(int i) const { return -rates(i, i); }

  /// Vector of exit rates, one per state.
  Eigen::VectorXd exit_rates() const { return -rates.diagonal(); }
};

/// Probability vector over states at time zero.
struct InitialDistribution {
  Eigen::VectorXd probs;

  int size() const { return static_cast<int>(probs.size()); }

  /// Point mass on a single state.
  static InitialDistribution point_mass(int num_states, int state);
};

/// Split of the state space {0, .., s-1} into non-empty working and failure
/// subsets. Both index lists are kept sorted; together they cover every state
/// exactly once.
struct StatePartition {
  std::vector<int> working;
  std::vector<int> failure;

  int size() const { return static_cast<int>(working.size() + failure.size()); }

  bool is_working(int state) const;

  /// Per-state membership flags, working = true.
  std::vector<bool> working_mask() const;
};

// ============================================================================
// Validation
// ============================================================================

/// Checks the rate-matrix invariants and returns a cleaned copy: entries in
/// [-tolerance, 0) on the off-diagonal are clamped to zero and the diagonal is
/// recomputed as the exact negated row sum. Throws Error with code not_square,
/// negative_off_diagonal or row_sum_violation.
Generator validate_generator(const Eigen::MatrixXd& raw,
                             double tolerance = kTol.generator);

/// Checks nonnegativity and unit mass (within tolerance), then renormalizes
/// exactly. Throws Error(invalid_argument) on violation.
InitialDistribution validate_distribution(const Eigen::VectorXd& probs,
                                          double tolerance = kTol.distribution);

/// Builds a partition from the working-state list; failure states are the
/// complement. Throws Error(invalid_argument) on out-of-range or duplicate
/// indices, Error(empty_working_set) if no working state is given, and
/// Error(invalid_argument) if no failure state remains.
StatePartition make_partition(int num_states, std::vector<int> working_states);

}  // namespace ctmr
