#pragma once

#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "ctmr/generator.hpp"
#include "ctmr/tolerances.hpp"

namespace ctmr {

// ============================================================================
// Instantaneous mobility indicators
//
// Each indicator is an expected jump intensity at time t, written as an inner
// product between the current state distribution p(t) = alpha^T exp(tQ) and a
// per-state aggregate rate vector:
//
//   rof(t)  rate of failures          working -> failure flux
//   ror(t)  rate of repairs           failure -> working flux
//   roi(t)  rate of inoccurrences     jumps that stay inside their subset
//   tmr(t)  total mobility rate       all jumps; partition-independent
//
// and tmr(t) = rof(t) + ror(t) + roi(t) identically.
// ============================================================================

/// Per-state aggregate rates for a fixed partition. Entries are indexed by
/// position in the partition's sorted working / failure lists.
struct AggregateRateVectors {
  Eigen::VectorXd out_of_working;   ///< for w in W: sum of q_{w,f} over f in F
  Eigen::VectorXd out_of_failure;   ///< for f in F: sum of q_{f,w} over w in W
  Eigen::VectorXd within_working;   ///< for w in W: sum of q_{w,w'} over w' != w in W
  Eigen::VectorXd within_failure;   ///< for f in F: sum of q_{f,f'} over f' != f in F
};

AggregateRateVectors aggregate_rate_vectors(const Generator& g,
                                            const StatePartition& partition);

/// Rate of occurrence of failures at time t.
double rocof(const Generator& g, const InitialDistribution& alpha,
             const StatePartition& partition, double t,
             double tail_tol = kTol.poisson_tail);

/// Rate of occurrence of repairs at time t.
double rocor(const Generator& g, const InitialDistribution& alpha,
             const StatePartition& partition, double t,
             double tail_tol = kTol.poisson_tail);

/// Rate of occurrence of inoccurrences (subset-internal jumps) at time t.
double roi(const Generator& g, const InitialDistribution& alpha,
           const StatePartition& partition, double t,
           double tail_tol = kTol.poisson_tail);

/// Total mobility rate at time t: <p(t), q> with q_h the exit rate of state h.
/// Takes no partition; the sum rof + ror + roi collapses to it for every
/// choice of partition.
double tmr(const Generator& g, const InitialDistribution& alpha, double t,
           double tail_tol = kTol.poisson_tail);

// ============================================================================
// Series and limits
// ============================================================================

struct IndicatorSeries {
  std::vector<double> grid;
  std::vector<double> rof;
  std::vector<double> ror;
  std::vector<double> roi;
  std::vector<double> tmr;
  std::optional<std::vector<double>> availability;
};

struct SeriesOptions {
  bool with_availability = false;
  double tail_tol = kTol.poisson_tail;
};

/// Evaluates all indicators on a time grid (strictly increasing, nonnegative;
/// Error(empty_grid) if empty). One matrix exponential per grid point; each
/// point is computed independently of the others, so the output is identical
/// no matter how or in what order the points are evaluated.
IndicatorSeries indicator_series(const Generator& g,
                                 const InitialDistribution& alpha,
                                 const StatePartition& partition,
                                 const std::vector<double>& grid,
                                 const SeriesOptions& options = {});

struct AsymptoticIndicators {
  double rof = 0.0;
  double ror = 0.0;
  double roi = 0.0;
  double tmr = 0.0;
};

/// Long-run limits, evaluated against the stationary distribution instead of
/// a time point. For an irreducible chain rof and ror coincide: in the limit
/// the probability flux across the partition boundary balances. Propagates
/// Error(reducible) from the stationary solve.
AsymptoticIndicators asymptotic_indicators(const Generator& g,
                                           const StatePartition& partition,
                                           double residual_tol = kTol.stationary_residual);

enum class Dominance { Failures, Repairs, Tie };

inline const char* to_string(Dominance d) noexcept {
  switch (d) {
    case Dominance::Failures: return "failures";
    case Dominance::Repairs:  return "repairs";
    case Dominance::Tie:      return "tie";
  }
  return "unknown";
}

/// Indicator values at t = 0. These depend only on alpha and the aggregate
/// rate vectors, so no matrix exponential is evaluated. Also reports which of
/// rof(0), ror(0) dominates at the start.
struct InitialComparison {
  double rof = 0.0;
  double ror = 0.0;
  double roi = 0.0;
  double tmr = 0.0;
  Dominance dominance = Dominance::Tie;
};

InitialComparison initial_indicator_comparison(const Generator& g,
                                               const InitialDistribution& alpha,
                                               const StatePartition& partition);

}  // namespace ctmr
