#pragma once

#include <Eigen/Dense>

#include "ctmr/generator.hpp"
#include "ctmr/tolerances.hpp"

namespace ctmr {

/// Long-run state distribution L, the solution of L^T Q = 0, sum(L) = 1.
///
/// Solved directly: one balance equation of Q^T x = 0 is replaced by the
/// normalization row, followed by one step of iterative refinement. A rank
/// test on Q^T rejects models whose null space has dimension above one with
/// Error(reducible); Error(solver_failure) if the residual cannot be pushed
/// below residual_tol. Requires an irreducible chain for the result to be
/// meaningful as a limit distribution.
Eigen::VectorXd stationary_distribution(const Generator& g,
                                        double residual_tol = kTol.stationary_residual,
                                        double rank_tol = kTol.rank);

/// Jump-chain transition matrix R: R_ij = q_ij / q_i off the diagonal for
/// q_i > 0; absorbing states get a self-loop of one.
Eigen::MatrixXd embedded_chain(const Generator& g);

/// Stationary vector of a row-stochastic matrix (pi^T P = pi^T), same
/// null-space machinery as stationary_distribution.
Eigen::VectorXd discrete_stationary(const Eigen::MatrixXd& transition,
                                    double residual_tol = kTol.stationary_residual,
                                    double rank_tol = kTol.rank);

/// Smallest nonzero decay rate of the generator: min(-Re(lambda)) over the
/// non-null eigenvalues. Governs how fast the chain mixes; returns 0 when no
/// decaying mode exists.
double spectral_gap(const Generator& g);

}  // namespace ctmr
