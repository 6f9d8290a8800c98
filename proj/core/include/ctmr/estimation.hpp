#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "ctmr/generator.hpp"
#include "ctmr/tolerances.hpp"

namespace ctmr {

// ============================================================================
// Discretization and counting
// ============================================================================

/// Uniform binning of a nonnegative signal into state indices. Bins are
/// half-open, lower edge inclusive: state k covers
/// [lower_bound + k*bin_width, lower_bound + (k+1)*bin_width), and the last
/// state is open-ended above. Defaults match 11 wind-speed classes of 2 m/s
/// starting at 0, with everything at or above 20 m/s collapsed into the top
/// state.
struct BinningScheme {
  double bin_width = 2.0;
  int num_states = 11;
  double lower_bound = 0.0;
};

/// Maps each sample to its state index. Error(empty_series) on an empty
/// input, Error(invalid_argument) on a sample below lower_bound (filter
/// first).
std::vector<int> discretize(const std::vector<double>& series,
                            const BinningScheme& scheme);

/// Result of dropping physically implausible samples. `breaks` holds indices
/// b into `kept` meaning the pair (kept[b], kept[b+1]) was not contiguous in
/// the raw series and must not be counted as a transition.
struct FilterReport {
  std::vector<double> kept;
  std::vector<std::size_t> breaks;
  std::size_t dropped = 0;
};

/// Removes samples that are negative or above max_speed. Every removal that
/// splits the series adds one break at the seam.
FilterReport filter_outliers(const std::vector<double>& series,
                             double max_speed = 50.0);

struct TransitionCounts {
  Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic> counts;
  std::int64_t total_observations = 0;

  std::int64_t total_transitions() const { return counts.sum(); }
};

/// Counts one-step transitions between consecutive states, skipping every
/// pair (b, b+1) listed in break_points. Always
/// total_transitions() <= total_observations - 1.
TransitionCounts count_transitions(const std::vector<int>& states,
                                   const std::vector<std::size_t>& break_points,
                                   int num_states);

/// Policy for rows with no observed transitions.
enum class ZeroRowPolicy {
  SelfLoop,  ///< treat the state as holding: P_ii = 1  (default)
  Uniform,   ///< spread evenly over all states
};

/// Row-normalized counts: P_ij = N_ij / sum_k N_ik. Error(all_zero_counts)
/// when no transition was observed at all.
Eigen::MatrixXd empirical_transition_matrix(const TransitionCounts& counts,
                                            ZeroRowPolicy policy = ZeroRowPolicy::SelfLoop);

// ============================================================================
// Generator embedding
// ============================================================================

struct EmbedConfig {
  /// Row-sum slack accepted on the input matrix.
  double stochastic_tol = kTol.stochastic;
  /// Tail tolerance for the reconstruction check exponential.
  double tail_tol = kTol.poisson_tail;
};

struct EmbedResult {
  Generator generator;
  /// Total negative off-diagonal mass of log(P)/dt that the projection onto
  /// the generator cone removed: sum_ij max(0, -candidate_ij). Zero means the
  /// matrix logarithm was already a valid generator.
  double negativity_mass = 0.0;
  /// max_ij |exp(dt*Q) - P| after projection, evaluated with the library's
  /// own exponential. Small when the projection changed little.
  double reconstruction_error = 0.0;
};

/// Recovers a rate matrix from a one-step transition matrix observed at
/// sampling interval dt: Q = log(P)/dt with the principal matrix logarithm,
/// then projection onto valid generators (negative off-diagonal entries
/// clipped to zero, diagonal rebalanced to keep zero row sums).
///
/// Error(logarithm_failure) when P has an eigenvalue on the closed negative
/// real axis (no principal logarithm); Error(non_convergent) when the
/// logarithm evaluation fails to produce finite entries.
EmbedResult embed_generator(const Eigen::MatrixXd& p, double dt,
                            const EmbedConfig& config = {});

// ============================================================================
// Weibull fit (marginal speed distribution)
// ============================================================================

struct WeibullParams {
  double scale = 0.0;  ///< lambda, same unit as the samples
  double shape = 0.0;  ///< k, dimensionless
};

struct WeibullConfig {
  double step_tol = 1e-10;  ///< Newton step size at convergence
  int max_iters = 100;
};

struct WeibullFit {
  WeibullParams params;
  int iterations = 0;
  std::size_t zeros_dropped = 0;  ///< nonpositive samples removed before fitting
};

/// Maximum-likelihood Weibull fit by profiling: the shape solves the
/// one-dimensional stationarity equation
///   sum(x^k ln x)/sum(x^k) - 1/k - mean(ln x) = 0,
/// whose left side is strictly increasing in k, via safeguarded Newton
/// (bisection fallback keeps the iterate inside a sign-changing bracket);
/// the scale then follows in closed form as (sum(x^k)/n)^(1/k).
///
/// Nonpositive samples are dropped and reported. Error(degenerate_sample)
/// when all samples coincide; Error(no_convergence) if the iteration fails
/// to meet step_tol within max_iters.
WeibullFit weibull_mle(const std::vector<double>& samples,
                       const WeibullConfig& config = {});

}  // namespace ctmr
