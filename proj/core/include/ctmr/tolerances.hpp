#pragma once

namespace ctmr {

/// Default numeric tolerances, collected in one place so call sites do not
/// grow their own magic numbers. Every operation that validates input or
/// truncates a series accepts an override.
struct Tolerances {
  /// Slack accepted when validating a rate matrix (off-diagonal sign, row sums).
  double generator = 1e-9;
  /// Row-sum defect tolerated in a computed transition matrix.
  double row_sum = 1e-10;
  /// Mass defect tolerated in a probability vector.
  double distribution = 1e-12;
  /// Poisson tail weight at which the uniformization series is truncated.
  double poisson_tail = 1e-12;
  /// Residual accepted from the stationary null-space solve.
  double stationary_residual = 1e-10;
  /// Relative pivot threshold for the irreducibility rank test.
  double rank = 1e-9;
  /// Row-sum slack accepted on matrices entering the generator embedding.
  double stochastic = 1e-8;
};

inline constexpr Tolerances kTol{};

}  // namespace ctmr
