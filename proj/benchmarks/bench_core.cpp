#include <cmath>
#include <vector>

#include <benchmark/benchmark.h>
#include <Eigen/Dense>

#include "ctmr/estimation.hpp"
#include "ctmr/generator.hpp"
#include "ctmr/mobility.hpp"
#include "ctmr/rng.hpp"
#include "ctmr/simulate.hpp"
#include "ctmr/stationary.hpp"
#include "ctmr/transition.hpp"

namespace {

using namespace ctmr;

// Birth-death ladder with mildly state-dependent rates; the shape of a
// fitted wind-speed model.
Generator ladder(int n) {
  Eigen::MatrixXd q = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    if (i + 1 < n) q(i, i + 1) = 0.35 + 0.02 * i;
    if (i > 0) q(i, i - 1) = 0.25 + 0.03 * i;
    q(i, i) = -q.row(i).sum();
  }
  return validate_generator(q);
}

Generator dense(int n) {
  Xoshiro256pp rng(42);
  Eigen::MatrixXd q(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) q(i, j) = i == j ? 0.0 : 0.05 + rng.uniform();
    q(i, i) = -q.row(i).sum();
  }
  return validate_generator(q);
}

std::vector<double> weibull_draws(std::size_t n) {
  Xoshiro256pp rng(7);
  std::vector<double> out(n);
  for (double& v : out)
    v = 9.2 * std::pow(-std::log1p(-rng.uniform()), 1.0 / 4.1);
  return out;
}

void BM_TransitionMatrix(benchmark::State& state) {
  const Generator g = ladder(11);
  const double t = static_cast<double>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(transition_matrix(g, t).probs);
}
BENCHMARK(BM_TransitionMatrix)->Arg(1)->Arg(10)->Arg(100);

void BM_TransitionMatrixDense(benchmark::State& state) {
  const Generator g = dense(static_cast<int>(state.range(0)));
  for (auto _ : state)
    benchmark::DoNotOptimize(transition_matrix(g, 5.0).probs);
}
BENCHMARK(BM_TransitionMatrixDense)->Arg(4)->Arg(11)->Arg(32);

void BM_IndicatorSeries(benchmark::State& state) {
  const Generator g = ladder(11);
  const InitialDistribution alpha = InitialDistribution::point_mass(11, 5);
  const StatePartition part = make_partition(11, {2, 3, 4, 5, 6, 7, 8});
  std::vector<double> grid(static_cast<std::size_t>(state.range(0)));
  for (std::size_t k = 0; k < grid.size(); ++k) grid[k] = 0.25 * k;
  SeriesOptions options;
  options.with_availability = true;
  for (auto _ : state)
    benchmark::DoNotOptimize(indicator_series(g, alpha, part, grid, options));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_IndicatorSeries)->Arg(33)->Arg(289);

void BM_Stationary(benchmark::State& state) {
  const Generator g = dense(static_cast<int>(state.range(0)));
  for (auto _ : state)
    benchmark::DoNotOptimize(stationary_distribution(g));
}
BENCHMARK(BM_Stationary)->Arg(4)->Arg(11)->Arg(32);

void BM_EmbedGenerator(benchmark::State& state) {
  const Generator g = ladder(static_cast<int>(state.range(0)));
  const Eigen::MatrixXd p = transition_matrix(g, 1.0).probs;
  for (auto _ : state)
    benchmark::DoNotOptimize(embed_generator(p, 1.0));
}
BENCHMARK(BM_EmbedGenerator)->Arg(4)->Arg(11)->Arg(32);

void BM_SimulateEnsemble(benchmark::State& state) {
  const Generator g = ladder(11);
  const InitialDistribution alpha = InitialDistribution::point_mass(11, 5);
  const StatePartition part = make_partition(11, {2, 3, 4, 5, 6, 7, 8});
  const std::vector<double> grid = {0.0, 1.0, 2.0, 3.0};
  const std::int64_t ensemble = state.range(0);
  for (auto _ : state)
    benchmark::DoNotOptimize(
        empirical_rates(g, alpha, part, grid, ensemble, 0.01, 1));
  state.SetItemsProcessed(state.iterations() * ensemble);
}
BENCHMARK(BM_SimulateEnsemble)->Arg(1000)->Arg(10000);

void BM_WeibullMLE(benchmark::State& state) {
  const std::vector<double> samples =
      weibull_draws(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(weibull_mle(samples));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_WeibullMLE)->Arg(10000)->Arg(100000);

void BM_Discretize(benchmark::State& state) {
  Xoshiro256pp rng(3);
  std::vector<double> speeds(static_cast<std::size_t>(state.range(0)));
  for (double& v : speeds) v = 21.0 * rng.uniform();
  for (auto _ : state)
    benchmark::DoNotOptimize(discretize(speeds, BinningScheme{}));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Discretize)->Arg(100000)->Arg(1000000);

}  // namespace

BENCHMARK_MAIN();
