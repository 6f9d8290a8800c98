#include "ctmr/simulate.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

namespace ctmr {

namespace {

void check_grid(const std::vector<double>& grid, double horizon) {
  if (grid.empty()) fail(errc::empty_grid, "event counting needs a grid");
  for (std::size_t k = 0; k < grid.size(); ++k) {
    if (!(grid[k] >= 0.0) || grid[k] > horizon)
      fail(errc::invalid_argument, "grid point outside [0, horizon]");
    if (k > 0 && !(grid[k] > grid[k - 1]))
      fail(errc::invalid_argument, "grid must be strictly increasing");
  }
}

int sample_index(const Eigen::VectorXd& weights, double total, double u) {
  // u uniform in [0,1); walk the cumulative weights. Rounding can leave the
  // draw past the last positive weight; fall back to it.
  double target = u * total;
  int last_positive = -1;
  for (Eigen::Index i = 0; i < weights.size(); ++i) {
    const double w = weights(i);
    if (w <= 0.0) continue;
    last_positive = static_cast<int>(i);
    target -= w;
    if (target < 0.0) return static_cast<int>(i);
  }
  return last_positive;
}

}  // namespace

int Trajectory::state_at(double t) const {
  const auto it = std::upper_bound(jump_times.begin(), jump_times.end(), t);
  if (it == jump_times.begin()) return initial_state;
  return states[static_cast<std::size_t>(it - jump_times.begin()) - 1];
}

Trajectory simulate_trajectory(const Generator& g,
                               const InitialDistribution& alpha,
                               double horizon, std::uint64_t seed) {
  if (alpha.size() != g.size())
    fail(errc::invalid_argument, "distribution size does not match generator");
  if (!(horizon >= 0.0))
    fail(errc::invalid_argument, "horizon must be nonnegative");

  Xoshiro256pp rng(seed);
  Trajectory traj;
  traj.horizon = horizon;
  traj.initial_state = sample_index(alpha.probs, alpha.probs.sum(), rng.uniform());

  int state = traj.initial_state;
  double t = 0.0;
  for (;;) {
    const double exit = g.exit_rate(state);
    if (exit <= 0.0) break;  // absorbing: holds to the horizon

    t += -std::log(rng.uniform_open()) / exit;
    if (t > horizon) break;

    Eigen::VectorXd row = g.rates.row(state);
    row(state) = 0.0;
    state = sample_index(row, exit, rng.uniform());
    traj.jump_times.push_back(t);
    traj.states.push_back(state);
  }
  return traj;
}

EventCounts classify_events(const Trajectory& trajectory,
                            const StatePartition& partition,
                            const std::vector<double>& grid) {
  check_grid(grid, trajectory.horizon);

  EventCounts counts;
  counts.grid = grid;
  counts.failures.assign(grid.size(), 0);
  counts.repairs.assign(grid.size(), 0);
  counts.inoccurrences.assign(grid.size(), 0);

  const std::vector<bool> working = partition.working_mask();
  int from = trajectory.initial_state;
  std::size_t k = 0;  // first grid point not yet passed
  std::int64_t failures = 0, repairs = 0, inoccurrences = 0;

  const auto flush_through = [&](double t) {
    while (k < grid.size() && grid[k] < t) {
      counts.failures[k] = failures;
      counts.repairs[k] = repairs;
      counts.inoccurrences[k] = inoccurrences;
      ++k;
    }
  };

  for (std::size_t j = 0; j < trajectory.jump_count(); ++j) {
    flush_through(trajectory.jump_times[j]);
    const int to = trajectory.states[j];
    const bool from_working = working[static_cast<std::size_t>(from)];
    const bool to_working = working[static_cast<std::size_t>(to)];
    if (from_working && !to_working)
      ++failures;
    else if (!from_working && to_working)
      ++repairs;
    else
      ++inoccurrences;
    from = to;
  }
  while (k < grid.size()) {
    counts.failures[k] = failures;
    counts.repairs[k] = repairs;
    counts.inoccurrences[k] = inoccurrences;
    ++k;
  }
  return counts;
}

RateEstimate empirical_rates(const Generator& g,
                             const InitialDistribution& alpha,
                             const StatePartition& partition,
                             const std::vector<double>& grid,
                             std::int64_t ensemble_size, double window,
                             std::uint64_t seed) {
  if (partition.size() != g.size())
    fail(errc::invalid_argument, "partition size does not match generator");
  if (!(window > 0.0)) fail(errc::invalid_argument, "window must be positive");
  if (ensemble_size < 2)
    fail(errc::invalid_argument, "ensemble must have at least 2 trajectories");
  if (grid.empty()) fail(errc::empty_grid, "rate estimation needs a grid");

  const double horizon = grid.back() + window;
  const std::size_t points = grid.size();
  const std::vector<bool> working = partition.working_mask();

  // Integer tallies of per-trajectory window counts; their sums are exact,
  // so the estimate does not depend on accumulation order.
  enum { kFail = 0, kRepair = 1, kInoc = 2, kTotal = 3 };
  std::vector<std::array<std::int64_t, 4>> sum(points, {0, 0, 0, 0});
  std::vector<std::array<std::int64_t, 4>> sum_sq(points, {0, 0, 0, 0});

  for (std::int64_t j = 0; j < ensemble_size; ++j) {
    const Trajectory traj = simulate_trajectory(
        g, alpha, horizon, derive_stream_seed(seed, static_cast<std::uint64_t>(j)));

    // Cumulative per-category counts at each jump, then window differences
    // via binary search over jump times.
    const std::size_t jumps = traj.jump_count();
    std::vector<std::int64_t> cum_fail(jumps + 1, 0), cum_rep(jumps + 1, 0),
        cum_inoc(jumps + 1, 0);
    int from = traj.initial_state;
    for (std::size_t i = 0; i < jumps; ++i) {
      const int to = traj.states[i];
      const bool fw = working[static_cast<std::size_t>(from)];
      const bool tw = working[static_cast<std::size_t>(to)];
      cum_fail[i + 1] = cum_fail[i] + (fw && !tw ? 1 : 0);
      cum_rep[i + 1] = cum_rep[i] + (!fw && tw ? 1 : 0);
      cum_inoc[i + 1] = cum_inoc[i] + (fw == tw ? 1 : 0);
      from = to;
    }

    const auto jumps_by = [&traj](double t) {
      return static_cast<std::size_t>(
          std::upper_bound(traj.jump_times.begin(), traj.jump_times.end(), t) -
          traj.jump_times.begin());
    };

    for (std::size_t k = 0; k < points; ++k) {
      const std::size_t a = jumps_by(grid[k]);
      const std::size_t b = jumps_by(grid[k] + window);
      const std::int64_t d_fail = cum_fail[b] - cum_fail[a];
      const std::int64_t d_rep = cum_rep[b] - cum_rep[a];
      const std::int64_t d_inoc = cum_inoc[b] - cum_inoc[a];
      const std::int64_t d_tot = d_fail + d_rep + d_inoc;
      const std::int64_t d[4] = {d_fail, d_rep, d_inoc, d_tot};
      for (int c = 0; c < 4; ++c) {
        sum[k][c] += d[c];
        sum_sq[k][c] += d[c] * d[c];
      }
    }
  }

  RateEstimate est;
  est.grid = grid;
  est.window = window;
  est.ensemble_size = ensemble_size;
  est.rof.resize(points);
  est.rof_se.resize(points);
  est.ror.resize(points);
  est.ror_se.resize(points);
  est.roi.resize(points);
  est.roi_se.resize(points);
  est.tmr.resize(points);
  est.tmr_se.resize(points);

  const double m = static_cast<double>(ensemble_size);
  const auto mean_and_se = [&](std::int64_t s, std::int64_t ss, double& mean,
                               double& se) {
    const double avg = static_cast<double>(s) / m;
    const double var =
        (static_cast<double>(ss) - m * avg * avg) / (m - 1.0);
    mean = avg / window;
    se = std::sqrt(std::max(0.0, var) / m) / window;
  };

  for (std::size_t k = 0; k < points; ++k) {
    mean_and_se(sum[k][kFail], sum_sq[k][kFail], est.rof[k], est.rof_se[k]);
    mean_and_se(sum[k][kRepair], sum_sq[k][kRepair], est.ror[k], est.ror_se[k]);
    mean_and_se(sum[k][kInoc], sum_sq[k][kInoc], est.roi[k], est.roi_se[k]);
    mean_and_se(sum[k][kTotal], sum_sq[k][kTotal], est.tmr[k], est.tmr_se[k]);
  }
  return est;
}

}  // namespace ctmr
