#include "doctest.h"

#include <cmath>

#include <Eigen/Dense>

#include "ctmr/rng.hpp"
#include "ctmr/stationary.hpp"
#include "testutil.hpp"

using namespace ctmr;

TEST_CASE("two-state stationary distribution is rate-balanced") {
  Eigen::MatrixXd q(2, 2);
  q << -1, 1,
        2, -2;
  const Eigen::VectorXd limit = stationary_distribution(validate_generator(q));
  CHECK(limit(0) == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
  CHECK(limit(1) == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
}

TEST_CASE("symmetric generator has the uniform stationary law") {
  const int s = 5;
  Eigen::MatrixXd q = Eigen::MatrixXd::Constant(s, s, 0.7);
  for (int i = 0; i < s; ++i) q(i, i) = -0.7 * (s - 1);
  const Eigen::VectorXd limit = stationary_distribution(validate_generator(q));
  for (int i = 0; i < s; ++i)
    CHECK(limit(i) == doctest::Approx(0.2).epsilon(1e-13));
}

TEST_CASE("stationary residual is far below tolerance on random models") {
  Xoshiro256pp rng(0x57A7u);
  for (int rep = 0; rep < 50; ++rep) {
    const int s = 2 + static_cast<int>(rng.next() % 10);
    const Generator g = testutil::random_sparse_generator(s, rng);
    const Eigen::VectorXd limit = stationary_distribution(g);
    CHECK(limit.minCoeff() >= 0.0);
    CHECK(limit.sum() == doctest::Approx(1.0).epsilon(1e-14));
    CHECK((g.rates.transpose() * limit).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("disconnected blocks are rejected as reducible") {
  Eigen::MatrixXd q = Eigen::MatrixXd::Zero(4, 4);
  q(0, 1) = 1.0; q(1, 0) = 2.0;
  q(2, 3) = 0.5; q(3, 2) = 0.5;
  q(0, 0) = -1.0; q(1, 1) = -2.0; q(2, 2) = -0.5; q(3, 3) = -0.5;
  try {
    stationary_distribution(validate_generator(q));
    FAIL("expected reducible");
  } catch (const Error& e) {
    CHECK(e.code() == errc::reducible);
  }
}

TEST_CASE("embedded chain divides rows by exit rates") {
  Eigen::MatrixXd q(3, 3);
  q << -2, 1, 1,
        1, -1, 0,
        0, 1, -1;
  const Eigen::MatrixXd r = embedded_chain(validate_generator(q));
  Eigen::MatrixXd expected(3, 3);
  expected << 0.0, 0.5, 0.5,
              1.0, 0.0, 0.0,
              0.0, 1.0, 0.0;
  CHECK((r - expected).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("absorbing state becomes a self-loop in the embedded chain") {
  Eigen::MatrixXd q(2, 2);
  q << 0, 0,
       2, -2;
  const Eigen::MatrixXd r = embedded_chain(validate_generator(q));
  CHECK(r(0, 0) == 1.0);
  CHECK(r(0, 1) == 0.0);
  CHECK(r(1, 0) == 1.0);
}

TEST_CASE("continuous and jump-chain stationary laws are linked by exit rates") {
  // L_j proportional to pi_j / q_j, with pi the stationary law of the
  // embedded chain; an independent route to the same limit.
  Xoshiro256pp rng(0xE0Bu);
  for (int rep = 0; rep < 25; ++rep) {
    const int s = 2 + static_cast<int>(rng.next() % 6);
    const Generator g = testutil::random_sparse_generator(s, rng);
    const Eigen::VectorXd direct = stationary_distribution(g);

    const Eigen::VectorXd pi = discrete_stationary(embedded_chain(g));
    Eigen::VectorXd via_jump(s);
    for (int j = 0; j < s; ++j) via_jump(j) = pi(j) / g.exit_rate(j);
    via_jump /= via_jump.sum();

    CHECK((direct - via_jump).cwiseAbs().maxCoeff() < 1e-8);
  }
}

TEST_CASE("spectral gap of the two-state chain is the total switching rate") {
  Eigen::MatrixXd q(2, 2);
  q << -1, 1,
        2, -2;
  CHECK(spectral_gap(validate_generator(q)) == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("spectral gap is positive for irreducible random models") {
  Xoshiro256pp rng(0x6A9u);
  for (int rep = 0; rep < 20; ++rep) {
    const Generator g = testutil::random_sparse_generator(
        2 + static_cast<int>(rng.next() % 6), rng);
    CHECK(spectral_gap(g) > 0.0);
  }
}
