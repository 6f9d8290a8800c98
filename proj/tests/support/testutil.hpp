#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "ctmr/generator.hpp"
#include "ctmr/rng.hpp"

namespace ctmr::testutil {

/// Random validated generator with every off-diagonal rate drawn uniformly
/// from (0, max_rate]; fully connected, hence irreducible.
Generator random_generator(int num_states, Xoshiro256pp& rng,
                           double max_rate = 2.0);

/// Random generator where each off-diagonal rate is present with probability
/// `density`; a cyclic backbone keeps the chain irreducible.
Generator random_sparse_generator(int num_states, Xoshiro256pp& rng,
                                  double max_rate = 2.0, double density = 0.4);

InitialDistribution random_distribution(int num_states, Xoshiro256pp& rng);

/// Random partition with both sides non-empty.
StatePartition random_partition(int num_states, Xoshiro256pp& rng);

/// Inverse-CDF Weibull samples with the library RNG.
std::vector<double> weibull_samples(double scale, double shape, std::size_t n,
                                    std::uint64_t seed);

struct GridSearchFit {
  double scale = 0.0;
  double shape = 0.0;
  double log_likelihood = 0.0;
};

/// Independent Weibull fit: two-stage exhaustive search of the log-likelihood
/// over a (scale, shape) grid. Slow and simple on purpose; exists only to
/// check the closed-form profile fit against something that cannot share its
/// bugs.
GridSearchFit weibull_grid_search(const std::vector<double>& samples);

}  // namespace ctmr::testutil
