#include "ctmr/mobility.hpp"

#include <cmath>
#include <string>

#include "ctmr/stationary.hpp"
#include "ctmr/transition.hpp"

namespace ctmr {

namespace {

void check_sizes(const Generator& g, const StatePartition& partition) {
  if (partition.size() != g.size())
    fail(errc::invalid_argument, "partition size does not match generator");
}

void check_sizes(const Generator& g, const InitialDistribution& alpha,
                 const StatePartition& partition) {
  check_sizes(g, partition);
  if (alpha.size() != g.size())
    fail(errc::invalid_argument, "distribution size does not match generator");
}

// Gathers the entries of a full state vector living on one side of the
// partition, in the side's sorted order.
Eigen::VectorXd restrict_to(const std::vector<int>& states,
                            const Eigen::VectorXd& full) {
  Eigen::VectorXd out(static_cast<Eigen::Index>(states.size()));
  for (std::size_t k = 0; k < states.size(); ++k)
    out(static_cast<Eigen::Index>(k)) = full(states[k]);
  return out;
}

struct IndicatorValues {
  double rof, ror, roi, tmr;
};

// All four indicators from a state distribution; shared by the time-domain,
// asymptotic and t = 0 entry points so they cannot drift apart.
IndicatorValues indicators_from_distribution(const Generator& g,
                                             const AggregateRateVectors& agg,
                                             const StatePartition& partition,
                                             const Eigen::VectorXd& p) {
  const Eigen::VectorXd p_w = restrict_to(partition.working, p);
  const Eigen::VectorXd p_f = restrict_to(partition.failure, p);
  IndicatorValues v{};
  v.rof = p_w.dot(agg.out_of_working);
  v.ror = p_f.dot(agg.out_of_failure);
  v.roi = p_w.dot(agg.within_working) + p_f.dot(agg.within_failure);
  v.tmr = p.dot(g.exit_rates());
  return v;
}

}  // namespace

AggregateRateVectors aggregate_rate_vectors(const Generator& g,
                                            const StatePartition& partition) {
  check_sizes(g, partition);

  const auto sum_rates = [&g](int from, const std::vector<int>& targets) {
    double total = 0.0;
    for (int to : targets)
      if (to != from) total += g.rates(from, to);
    return total;
  };

  AggregateRateVectors agg;
  agg.out_of_working.resize(static_cast<Eigen::Index>(partition.working.size()));
  agg.within_working.resize(static_cast<Eigen::Index>(partition.working.size()));
  agg.out_of_failure.resize(static_cast<Eigen::Index>(partition.failure.size()));
  agg.within_failure.resize(static_cast<Eigen::Index>(partition.failure.size()));

  for (std::size_t k = 0; k < partition.working.size(); ++k) {
    const int w = partition.working[k];
    agg.out_of_working(static_cast<Eigen::Index>(k)) = sum_rates(w, partition.failure);
    agg.within_working(static_cast<Eigen::Index>(k)) = sum_rates(w, partition.working);
  }
  for (std::size_t k = 0; k < partition.failure.size(); ++k) {
    const int f = partition.failure[k];
    agg.out_of_failure(static_cast<Eigen::Index>(k)) = sum_rates(f, partition.working);
    agg.within_failure(static_cast<Eigen::Index>(k)) = sum_rates(f, partition.failure);
  }
  return agg;
}

double rocof(const Generator& g, const InitialDistribution& alpha,
             const StatePartition& partition, double t, double tail_tol) {
  check_sizes(g, alpha, partition);
  const AggregateRateVectors agg = aggregate_rate_vectors(g, partition);
  const Eigen::VectorXd p = unconditional_distribution(g, alpha, t, tail_tol);
  return restrict_to(partition.working, p).dot(agg.out_of_working);
}

double rocor(const Generator& g, const InitialDistribution& alpha,
             const StatePartition& partition, double t, double tail_tol) {
  check_sizes(g, alpha, partition);
  const AggregateRateVectors agg = aggregate_rate_vectors(g, partition);
  const Eigen::VectorXd p = unconditional_distribution(g, alpha, t, tail_tol);
  return restrict_to(partition.failure, p).dot(agg.out_of_failure);
}

double roi(const Generator& g, const InitialDistribution& alpha,
           const StatePartition& partition, double t, double tail_tol) {
  check_sizes(g, alpha, partition);
  const AggregateRateVectors agg = aggregate_rate_vectors(g, partition);
  const Eigen::VectorXd p = unconditional_distribution(g, alpha, t, tail_tol);
  return restrict_to(partition.working, p).dot(agg.within_working) +
         restrict_to(partition.failure, p).dot(agg.within_failure);
}

double tmr(const Generator& g, const InitialDistribution& alpha, double t,
           double tail_tol) {
  if (alpha.size() != g.size())
    fail(errc::invalid_argument, "distribution size does not match generator");
  const Eigen::VectorXd p = unconditional_distribution(g, alpha, t, tail_tol);
  return p.dot(g.exit_rates());
}

IndicatorSeries indicator_series(const Generator& g,
                                 const InitialDistribution& alpha,
                                 const StatePartition& partition,
                                 const std::vector<double>& grid,
                                 const SeriesOptions& options) {
  check_sizes(g, alpha, partition);
  if (grid.empty()) fail(errc::empty_grid, "indicator series needs a grid");
  for (std::size_t k = 0; k < grid.size(); ++k) {
    if (!(grid[k] >= 0.0))
      fail(errc::invalid_argument, "grid times must be nonnegative");
    if (k > 0 && !(grid[k] > grid[k - 1]))
      fail(errc::invalid_argument, "grid must be strictly increasing");
  }

  const AggregateRateVectors agg = aggregate_rate_vectors(g, partition);

  IndicatorSeries series;
  series.grid = grid;
  series.rof.reserve(grid.size());
  series.ror.reserve(grid.size());
  series.roi.reserve(grid.size());
  series.tmr.reserve(grid.size());
  if (options.with_availability) series.availability.emplace();

  for (double t : grid) {
    const Eigen::VectorXd p =
        unconditional_distribution(g, alpha, t, options.tail_tol);
    const IndicatorValues v =
        indicators_from_distribution(g, agg, partition, p);
    series.rof.push_back(v.rof);
    series.ror.push_back(v.ror);
    series.roi.push_back(v.roi);
    series.tmr.push_back(v.tmr);
    if (series.availability) {
      double up = 0.0;
      for (int w : partition.working) up += p(w);
      series.availability->push_back(std::min(1.0, std::max(0.0, up)));
    }
  }
  return series;
}

AsymptoticIndicators asymptotic_indicators(const Generator& g,
                                           const StatePartition& partition,
                                           double residual_tol) {
  check_sizes(g, partition);
  const Eigen::VectorXd limit = stationary_distribution(g, residual_tol);
  const AggregateRateVectors agg = aggregate_rate_vectors(g, partition);
  const IndicatorValues v =
      indicators_from_distribution(g, agg, partition, limit);
  return AsymptoticIndicators{v.rof, v.ror, v.roi, v.tmr};
}

InitialComparison initial_indicator_comparison(const Generator& g,
                                               const InitialDistribution& alpha,
                                               const StatePartition& partition) {
  check_sizes(g, alpha, partition);
  const AggregateRateVectors agg = aggregate_rate_vectors(g, partition);
  const IndicatorValues v =
      indicators_from_distribution(g, agg, partition, alpha.probs);

  InitialComparison cmp;
  cmp.rof = v.rof;
  cmp.ror = v.ror;
  cmp.roi = v.roi;
  cmp.tmr = v.tmr;
  const double scale = std::max({1.0, std::abs(v.rof), std::abs(v.ror)});
  if (std::abs(v.rof - v.ror) <= 1e-12 * scale)
    cmp.dominance = Dominance::Tie;
  else
    cmp.dominance = v.rof > v.ror ? Dominance::Failures : Dominance::Repairs;
  return cmp;
}

}  // namespace ctmr
