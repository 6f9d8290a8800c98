#pragma once

#include <cstdint>
#include <vector>

#include "ctmr/generator.hpp"
#include "ctmr/rng.hpp"

namespace ctmr {

// Monte-Carlo machinery kept deliberately independent of the analytic side:
// it never touches a matrix exponential, only exponential holding times and
// jump-chain draws, so agreement between the two is a real cross-check.

/// One sampled path on [0, horizon]. states[k] is the state entered at
/// jump_times[k]; the path starts in initial_state at time 0. An absorbing
/// state, once entered, holds to the horizon.
struct Trajectory {
  double horizon = 0.0;
  int initial_state = 0;
  std::vector<double> jump_times;
  std::vector<int> states;

  std::size_t jump_count() const { return jump_times.size(); }

  /// State occupied at time t (right-continuous).
  int state_at(double t) const;
};

/// Samples one path: exponential holding time at the current state's exit
/// rate, then a jump drawn from the embedded chain row. Fully determined by
/// the seed.
Trajectory simulate_trajectory(const Generator& g,
                               const InitialDistribution& alpha,
                               double horizon, std::uint64_t seed);

/// Cumulative event counts of one trajectory on a time grid. Each jump is
/// classified by the partition: working -> failure is a failure, the reverse
/// a repair, and a jump inside either subset an inoccurrence. Entry k counts
/// events in [0, grid[k]]; failures + repairs + inoccurrences add up to the
/// total jump count exactly.
struct EventCounts {
  std::vector<double> grid;
  std::vector<std::int64_t> failures;
  std::vector<std::int64_t> repairs;
  std::vector<std::int64_t> inoccurrences;

  std::int64_t total(std::size_t k) const {
    return failures[k] + repairs[k] + inoccurrences[k];
  }
};

EventCounts classify_events(const Trajectory& trajectory,
                            const StatePartition& partition,
                            const std::vector<double>& grid);

/// Ensemble estimate of the instantaneous event rates on a grid, with
/// standard errors. For each trajectory and grid point the number of events
/// falling in (t, t + window] is counted per category; the finite-window
/// estimator
///     rate(t) ~ E[N(t + window) - N(t)] / window
/// carries an O(window) discretization bias, so windows should be small
/// against the fastest rate in the model.
struct RateEstimate {
  std::vector<double> grid;
  double window = 0.0;
  std::int64_t ensemble_size = 0;

  std::vector<double> rof, rof_se;
  std::vector<double> ror, ror_se;
  std::vector<double> roi, roi_se;
  std::vector<double> tmr, tmr_se;
};

/// Trajectory seeds derive from `seed` via derive_stream_seed(seed, j), and
/// the per-trajectory counts are integers accumulated into integer tallies,
/// so the result is bitwise identical for a given seed regardless of
/// evaluation order. Requires ensemble_size >= 2 (standard errors need a
/// variance); hundreds or more for the errors to mean anything.
RateEstimate empirical_rates(const Generator& g,
                             const InitialDistribution& alpha,
                             const StatePartition& partition,
                             const std::vector<double>& grid,
                             std::int64_t ensemble_size, double window,
                             std::uint64_t seed);

}  // namespace ctmr
