#pragma once

#include <Eigen/Dense>

#include "ctmr/generator.hpp"
#include "ctmr/tolerances.hpp"

namespace ctmr {

/// Transition probabilities P(t) = exp(tQ) for one time point.
struct TransitionMatrix {
  double time = 0.0;
  Eigen::MatrixXd probs;
};

/// exp(t*M) for a rate matrix M or any principal sub-block of one
/// (off-diagonal >= 0, row sums <= 0), by uniformization: with
/// rate = max_i(-M_ii) and B = I + M/rate, the exponential is the Poisson
/// mixture sum_n w_n(rate*t) B^n, which involves only nonnegative terms and
/// so cannot produce negative probabilities. The series is truncated once
/// the remaining Poisson tail weight drops below tail_tol; when rate*t is
/// too large for a single well-conditioned series, t is halved repeatedly
/// and the result squared back up.
///
/// max_terms <= 0 selects the default cap of 10*rate*t + 100 terms; hitting
/// the cap before the tail bound throws Error(truncation_failure).
Eigen::MatrixXd uniformized_exponential(const Eigen::MatrixXd& sub_generator,
                                        double t,
                                        double tail_tol = kTol.poisson_tail,
                                        long max_terms = 0);

/// P(t) for a validated generator. Rows are checked to sum to one within
/// row_sum_tol (Error(row_sum_violation) otherwise) and entries are clamped
/// to [0, 1].
TransitionMatrix transition_matrix(const Generator& g, double t,
                                   double tail_tol = kTol.poisson_tail,
                                   double row_sum_tol = kTol.row_sum);

/// State distribution at time t: alpha^T P(t).
Eigen::VectorXd unconditional_distribution(const Generator& g,
                                           const InitialDistribution& alpha,
                                           double t,
                                           double tail_tol = kTol.poisson_tail);

/// Probability of being in a working state at time t.
double availability(const Generator& g, const InitialDistribution& alpha,
                    const StatePartition& partition, double t,
                    double tail_tol = kTol.poisson_tail);

/// Probability that no failure has occurred by time t: the working states are
/// made absorbing by restricting Q to the working block, whose exponential is
/// substochastic, and the lost mass is exactly the hit probability.
double reliability(const Generator& g, const InitialDistribution& alpha,
                   const StatePartition& partition, double t,
                   double tail_tol = kTol.poisson_tail);

}  // namespace ctmr
