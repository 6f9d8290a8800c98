#include "doctest.h"

#include <cmath>
#include <vector>

#include <Eigen/Dense>

#include "ctmr/mobility.hpp"
#include "ctmr/rng.hpp"
#include "ctmr/stationary.hpp"
#include "ctmr/transition.hpp"
#include "testutil.hpp"

using namespace ctmr;

namespace {

// 0 <-> 1 working, 2 failed; 0 can fail, 2 repairs to 1.
Generator three_state_fixture() {
  Eigen::MatrixXd q(3, 3);
  q << -2, 1, 1,
        1, -1, 0,
        0, 1, -1;
  return validate_generator(q);
}

// 0 working, 1 failed; failure rate 1, repair rate 2.
Generator two_state_fixture() {
  Eigen::MatrixXd q(2, 2);
  q << -1, 1,
        2, -2;
  return validate_generator(q);
}

}  // namespace

TEST_CASE("aggregate rate vectors split the generator by partition") {
  const Generator g = three_state_fixture();
  const StatePartition part = make_partition(3, {0, 1});
  const AggregateRateVectors agg = aggregate_rate_vectors(g, part);

  CHECK(agg.out_of_working(0) == 1.0);  // state 0 -> failure 2
  CHECK(agg.out_of_working(1) == 0.0);  // state 1 cannot fail directly
  CHECK(agg.out_of_failure(0) == 1.0);  // state 2 -> working 1
  CHECK(agg.within_working(0) == 1.0);  // 0 -> 1
  CHECK(agg.within_working(1) == 1.0);  // 1 -> 0
  CHECK(agg.within_failure(0) == 0.0);  // lone failure state
}

TEST_CASE("aggregate vectors of the two-state chain are the plain rates") {
  const Generator g = two_state_fixture();
  const AggregateRateVectors agg =
      aggregate_rate_vectors(g, make_partition(2, {0}));
  CHECK(agg.out_of_working(0) == 1.0);
  CHECK(agg.out_of_failure(0) == 2.0);
  CHECK(agg.within_working(0) == 0.0);
  CHECK(agg.within_failure(0) == 0.0);
}

TEST_CASE("two-state failure and repair rates follow the closed forms") {
  const Generator g = two_state_fixture();
  const InitialDistribution alpha = InitialDistribution::point_mass(2, 0);
  const StatePartition part = make_partition(2, {0});

  for (double t : {0.0, 0.5, 1.0, 5.0}) {
    const double decay = std::exp(-3.0 * t);
    CHECK(rocof(g, alpha, part, t) ==
          doctest::Approx(2.0 / 3.0 + decay / 3.0).epsilon(1e-12));
    CHECK(rocor(g, alpha, part, t) ==
          doctest::Approx(2.0 / 3.0 - 2.0 * decay / 3.0).epsilon(1e-12));
    CHECK(roi(g, alpha, part, t) == 0.0);
  }
}

TEST_CASE("indicators at t = 0 read straight off the initial distribution") {
  const Generator g = three_state_fixture();
  const InitialDistribution alpha = InitialDistribution::point_mass(3, 0);
  const StatePartition part = make_partition(3, {0, 1});

  const InitialComparison cmp = initial_indicator_comparison(g, alpha, part);
  CHECK(cmp.rof == 1.0);
  CHECK(cmp.ror == 0.0);
  CHECK(cmp.roi == 1.0);
  CHECK(cmp.tmr == 2.0);
  CHECK(cmp.dominance == Dominance::Failures);

  // consistent with the time-domain operations evaluated at 0
  CHECK(rocof(g, alpha, part, 0.0) == cmp.rof);
  CHECK(rocor(g, alpha, part, 0.0) == cmp.ror);
  CHECK(roi(g, alpha, part, 0.0) == cmp.roi);
  CHECK(tmr(g, alpha, 0.0) == cmp.tmr);
}

TEST_CASE("a start inside the failure set makes repairs dominate") {
  const Generator g = two_state_fixture();
  const InitialComparison cmp = initial_indicator_comparison(
      g, InitialDistribution::point_mass(2, 1), make_partition(2, {0}));
  CHECK(cmp.ror == 2.0);
  CHECK(cmp.dominance == Dominance::Repairs);
}

TEST_CASE("balanced initial fluxes are reported as a tie") {
  const Generator g = two_state_fixture();
  Eigen::VectorXd a(2);
  a << 2.0 / 3.0, 1.0 / 3.0;  // rof(0) = 2/3 * 1 equals ror(0) = 1/3 * 2
  const InitialComparison cmp = initial_indicator_comparison(
      g, validate_distribution(a), make_partition(2, {0}));
  CHECK(cmp.dominance == Dominance::Tie);
}

TEST_CASE("total mobility is the sum of its three parts") {
  Xoshiro256pp rng(0x5EED5u);
  for (int rep = 0; rep < 200; ++rep) {
    const int s = 2 + static_cast<int>(rng.next() % 9);
    const Generator g = testutil::random_sparse_generator(s, rng, 3.0);
    const InitialDistribution alpha = testutil::random_distribution(s, rng);
    const StatePartition part = testutil::random_partition(s, rng);
    const double t = rng.uniform() * 10.0;

    const double sum = rocof(g, alpha, part, t) + rocor(g, alpha, part, t) +
                       roi(g, alpha, part, t);
    CHECK(std::abs(sum - tmr(g, alpha, t)) < 1e-10);
  }
}

TEST_CASE("total mobility does not depend on the partition") {
  Xoshiro256pp rng(0x4A11u);
  const Generator g = testutil::random_generator(4, rng);
  const InitialDistribution alpha = testutil::random_distribution(4, rng);
  const double t = 0.8;

  const double reference = tmr(g, alpha, t);
  // every proper non-empty split of 4 states
  for (int mask = 1; mask < 15; ++mask) {
    std::vector<int> working;
    for (int i = 0; i < 4; ++i)
      if (mask & (1 << i)) working.push_back(i);
    const StatePartition part = make_partition(4, working);
    const double sum = rocof(g, alpha, part, t) + rocor(g, alpha, part, t) +
                       roi(g, alpha, part, t);
    CHECK(std::abs(sum - reference) < 1e-12);
  }
}

TEST_CASE("two-state long-run indicators") {
  const Generator g = two_state_fixture();
  const AsymptoticIndicators limits =
      asymptotic_indicators(g, make_partition(2, {0}));
  CHECK(limits.rof == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
  CHECK(limits.ror == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
  CHECK(limits.roi == 0.0);
  CHECK(limits.tmr == doctest::Approx(4.0 / 3.0).epsilon(1e-14));
}

TEST_CASE("long-run failure and repair rates balance for irreducible models") {
  Xoshiro256pp rng(0xBA1Au);
  for (int rep = 0; rep < 25; ++rep) {
    const int s = 2 + static_cast<int>(rng.next() % 9);
    const Generator g = testutil::random_sparse_generator(s, rng);
    const StatePartition part = testutil::random_partition(s, rng);
    const AsymptoticIndicators limits = asymptotic_indicators(g, part);
    CHECK(std::abs(limits.rof - limits.ror) < 1e-10);
    CHECK(limits.tmr ==
          doctest::Approx(limits.rof + limits.ror + limits.roi).epsilon(1e-12));
  }
}

TEST_CASE("time-domain indicators reach their long-run limits") {
  Xoshiro256pp rng(0x11F7u);
  for (int rep = 0; rep < 5; ++rep) {
    const int s = 3 + static_cast<int>(rng.next() % 4);
    const Generator g = testutil::random_sparse_generator(s, rng);
    const InitialDistribution alpha = testutil::random_distribution(s, rng);
    const StatePartition part = testutil::random_partition(s, rng);
    const AsymptoticIndicators limits = asymptotic_indicators(g, part);

    const double t = 200.0 / spectral_gap(g);
    CHECK(std::abs(rocof(g, alpha, part, t) - limits.rof) < 1e-6);
    CHECK(std::abs(tmr(g, alpha, t) - limits.tmr) < 1e-6);
  }
}

TEST_CASE("indicator series matches the pointwise operations") {
  const Generator g = three_state_fixture();
  const InitialDistribution alpha = InitialDistribution::point_mass(3, 0);
  const StatePartition part = make_partition(3, {0, 1});
  const std::vector<double> grid{0.0, 0.25, 1.0, 4.0};

  SeriesOptions options;
  options.with_availability = true;
  const IndicatorSeries series = indicator_series(g, alpha, part, grid, options);

  REQUIRE(series.grid == grid);
  REQUIRE(series.availability.has_value());
  for (std::size_t k = 0; k < grid.size(); ++k) {
    CHECK(series.rof[k] == rocof(g, alpha, part, grid[k]));
    CHECK(series.ror[k] == rocor(g, alpha, part, grid[k]));
    CHECK(series.roi[k] == roi(g, alpha, part, grid[k]));
    CHECK(series.tmr[k] == tmr(g, alpha, grid[k]));
    CHECK((*series.availability)[k] == availability(g, alpha, part, grid[k]));
  }
}

TEST_CASE("a single-point grid reproduces the initial comparison") {
  const Generator g = three_state_fixture();
  const InitialDistribution alpha = InitialDistribution::point_mass(3, 0);
  const StatePartition part = make_partition(3, {0, 1});
  const IndicatorSeries series = indicator_series(g, alpha, part, {0.0});
  const InitialComparison cmp = initial_indicator_comparison(g, alpha, part);
  CHECK(series.rof[0] == cmp.rof);
  CHECK(series.ror[0] == cmp.ror);
  CHECK(series.roi[0] == cmp.roi);
  CHECK(series.tmr[0] == cmp.tmr);
}

TEST_CASE("series grid validation") {
  const Generator g = two_state_fixture();
  const InitialDistribution alpha = InitialDistribution::point_mass(2, 0);
  const StatePartition part = make_partition(2, {0});
  try {
    indicator_series(g, alpha, part, {});
    FAIL("expected empty_grid");
  } catch (const Error& e) {
    CHECK(e.code() == errc::empty_grid);
  }
  CHECK_THROWS_AS(indicator_series(g, alpha, part, {0.0, 0.5, 0.5}), Error);
  CHECK_THROWS_AS(indicator_series(g, alpha, part, {-1.0, 0.5}), Error);
}

TEST_CASE("discrete modulus of continuity shrinks under grid refinement") {
  const Generator g = three_state_fixture();
  const InitialDistribution alpha = InitialDistribution::point_mass(3, 0);
  const StatePartition part = make_partition(3, {0, 1});

  double previous = 1e300;
  for (int points : {9, 17, 33, 65}) {
    std::vector<double> grid;
    for (int k = 0; k < points; ++k)
      grid.push_back(2.0 * static_cast<double>(k) / (points - 1));
    const IndicatorSeries series = indicator_series(g, alpha, part, grid);
    double modulus = 0.0;
    for (std::size_t k = 1; k < series.rof.size(); ++k)
      modulus = std::max(modulus, std::abs(series.rof[k] - series.rof[k - 1]));
    CHECK(modulus < previous);
    previous = modulus;
  }
}

TEST_CASE("asymptotics on a reducible model are rejected") {
  Eigen::MatrixXd q = Eigen::MatrixXd::Zero(4, 4);
  q(0, 1) = 1.0; q(1, 0) = 2.0;
  q(2, 3) = 0.5; q(3, 2) = 0.5;
  q(0, 0) = -1.0; q(1, 1) = -2.0; q(2, 2) = -0.5; q(3, 3) = -0.5;
  try {
    asymptotic_indicators(validate_generator(q), make_partition(4, {0, 2}));
    FAIL("expected reducible");
  } catch (const Error& e) {
    CHECK(e.code() == errc::reducible);
  }
}
