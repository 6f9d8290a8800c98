#include "doctest.h"

#include <cmath>

#include <Eigen/Dense>

#include "ctmr/rng.hpp"
#include "ctmr/transition.hpp"
#include "testutil.hpp"

using namespace ctmr;

namespace {

// Two-state chain 0 ->(1) 1, 1 ->(2) 0. P(t) has the closed form
//   P(t) = [[2/3, 1/3], [2/3, 1/3]] + e^{-3t}/3 * [[1, -1], [-2, 2]]
// which every check below is frozen against.
Generator two_state_fixture() {
  Eigen::MatrixXd q(2, 2);
  q << -1, 1,
        2, -2;
  return validate_generator(q);
}

double p00(double t) { return (2.0 + std::exp(-3.0 * t)) / 3.0; }
double p10(double t) { return 2.0 * (1.0 - std::exp(-3.0 * t)) / 3.0; }

}  // namespace

TEST_CASE("transition matrix at t = 0 is the identity") {
  const Generator g = two_state_fixture();
  const TransitionMatrix p = transition_matrix(g, 0.0);
  CHECK(p.probs == Eigen::MatrixXd::Identity(2, 2));
}

TEST_CASE("two-state transition probabilities match the closed form") {
  const Generator g = two_state_fixture();
  for (double t : {0.1, 0.5, 1.0, 2.5, 5.0}) {
    const TransitionMatrix p = transition_matrix(g, t);
    CHECK(p.probs(0, 0) == doctest::Approx(p00(t)).epsilon(1e-12));
    CHECK(p.probs(0, 1) == doctest::Approx(1.0 - p00(t)).epsilon(1e-12));
    CHECK(p.probs(1, 0) == doctest::Approx(p10(t)).epsilon(1e-12));
    CHECK(p.probs(1, 1) == doctest::Approx(1.0 - p10(t)).epsilon(1e-12));
  }
  // frozen spot value: p00(1) = 2/3 + e^-3/3
  CHECK(transition_matrix(g, 1.0).probs(0, 0) ==
        doctest::Approx(0.68326235612262126).epsilon(1e-12));
}

TEST_CASE("long horizons relax every row to the stationary distribution") {
  const Generator g = two_state_fixture();
  const TransitionMatrix p = transition_matrix(g, 50.0);
  for (int i = 0; i < 2; ++i) {
    CHECK(p.probs(i, 0) == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
    CHECK(p.probs(i, 1) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  }
}

TEST_CASE("rows sum to one and entries stay in [0,1] across random models") {
  Xoshiro256pp rng(0x7A5Eu);
  for (int rep = 0; rep < 100; ++rep) {
    const int s = 2 + static_cast<int>(rng.next() % 7);
    const Generator g = testutil::random_generator(s, rng);
    const double t = rng.uniform() * 100.0;
    const TransitionMatrix p = transition_matrix(g, t);
    for (int i = 0; i < s; ++i) {
      CHECK(std::abs(p.probs.row(i).sum() - 1.0) < 1e-10);
      for (int j = 0; j < s; ++j) {
        CHECK(p.probs(i, j) >= 0.0);
        CHECK(p.probs(i, j) <= 1.0);
      }
    }
  }
}

TEST_CASE("semigroup property P(s)P(t) = P(s+t)") {
  Xoshiro256pp rng(0xBEEFu);
  for (int rep = 0; rep < 25; ++rep) {
    const int s = 2 + static_cast<int>(rng.next() % 5);
    const Generator g = testutil::random_sparse_generator(s, rng);
    const double t1 = rng.uniform() * 5.0;
    const double t2 = rng.uniform() * 5.0;
    const Eigen::MatrixXd lhs =
        transition_matrix(g, t1).probs * transition_matrix(g, t2).probs;
    const Eigen::MatrixXd rhs = transition_matrix(g, t1 + t2).probs;
    CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-8);
  }
}

TEST_CASE("transition matrix solves the forward equation") {
  // d/dt P(t) = P(t) Q, checked by central difference
  Xoshiro256pp rng(0xF00Du);
  const Generator g = testutil::random_generator(4, rng);
  const double h = 1e-5;
  for (double t : {0.3, 1.7}) {
    const Eigen::MatrixXd deriv =
        (transition_matrix(g, t + h).probs - transition_matrix(g, t - h).probs) /
        (2.0 * h);
    const Eigen::MatrixXd expected = transition_matrix(g, t).probs * g.rates;
    CHECK((deriv - expected).cwiseAbs().maxCoeff() < 1e-3);
  }
}

TEST_CASE("large rate*t arguments fall back to squaring without damage") {
  Eigen::MatrixXd q(3, 3);
  q << -30, 20, 10,
        5, -15, 10,
       40, 10, -50;
  const Generator g = validate_generator(q);
  const TransitionMatrix p = transition_matrix(g, 200.0);  // rate*t = 10000
  for (int i = 0; i < 3; ++i)
    CHECK(std::abs(p.probs.row(i).sum() - 1.0) < 1e-10);
  // all rows should have relaxed to the same limit
  CHECK((p.probs.row(0) - p.probs.row(2)).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("term cap failure is reported") {
  const Generator g = two_state_fixture();
  try {
    uniformized_exponential(g.rates, 10.0, 1e-12, 3);
    FAIL("expected truncation_failure");
  } catch (const Error& e) {
    CHECK(e.code() == errc::truncation_failure);
  }
}

TEST_CASE("negative time is rejected") {
  CHECK_THROWS_AS(transition_matrix(two_state_fixture(), -1.0), Error);
}

TEST_CASE("unconditional distribution propagates the initial law") {
  const Generator g = two_state_fixture();
  Eigen::VectorXd a0(2);
  a0 << 0.5, 0.5;
  const InitialDistribution alpha = validate_distribution(a0);
  const Eigen::VectorXd p = unconditional_distribution(g, alpha, 1.0);
  const double expected0 = 0.5 * p00(1.0) + 0.5 * p10(1.0);
  CHECK(p(0) == doctest::Approx(expected0).epsilon(1e-12));
  CHECK(p.sum() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("availability sums the working mass") {
  const Generator g = two_state_fixture();
  const InitialDistribution alpha = InitialDistribution::point_mass(2, 0);
  const StatePartition part = make_partition(2, {0});
  CHECK(availability(g, alpha, part, 0.0) == 1.0);
  CHECK(availability(g, alpha, part, 1.0) ==
        doctest::Approx(p00(1.0)).epsilon(1e-12));
}

TEST_CASE("reliability is the no-failure probability") {
  const Generator g = two_state_fixture();
  const InitialDistribution alpha = InitialDistribution::point_mass(2, 0);
  const StatePartition part = make_partition(2, {0});
  // leaving state 0 at rate 1: survival is exactly e^-t
  CHECK(reliability(g, alpha, part, 1.0) ==
        doctest::Approx(std::exp(-1.0)).epsilon(1e-12));
  CHECK(reliability(g, alpha, part, 0.0) == 1.0);
}

TEST_CASE("reliability never exceeds availability") {
  Xoshiro256pp rng(0xACCE55u);
  for (int rep = 0; rep < 20; ++rep) {
    const int s = 3 + static_cast<int>(rng.next() % 4);
    const Generator g = testutil::random_generator(s, rng);
    const StatePartition part = testutil::random_partition(s, rng);
    InitialDistribution alpha =
        InitialDistribution::point_mass(s, part.working.front());
    const double t = rng.uniform() * 3.0;
    const double r = reliability(g, alpha, part, t);
    const double a = availability(g, alpha, part, t);
    CHECK(r <= a + 1e-12);
  }
}
