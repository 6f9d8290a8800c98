#include "ctmr/generator.hpp"

#include <algorithm>
#include <string>

namespace ctmr {

InitialDistribution InitialDistribution::point_mass(int num_states, int state) {
  if (num_states < 2) fail(errc::invalid_argument, "need at least 2 states");
  if (state < 0 || state >= num_states)
    fail(errc::invalid_argument,
         "initial state " + std::to_string(state) + " out of range");
  Eigen::VectorXd p = Eigen::VectorXd::Zero(num_states);
  p(state) = 1.0;
  return InitialDistribution{std::move(p)};
}

bool StatePartition::is_working(int state) const {
  return std::binary_search(working.begin(), working.end(), state);
}

std::vector<bool> StatePartition::working_mask() const {
  std::vector<bool> mask(static_cast<std::size_t>(size()), false);
  for (int w : working) mask[static_cast<std::size_t>(w)] = true;
  return mask;
}

Generator validate_generator(const Eigen::MatrixXd& raw, double tolerance) {
  const auto rows = raw.rows();
  if (rows != raw.cols())
    fail(errc::not_square, "rate matrix is " + std::to_string(rows) + "x" +
                               std::to_string(raw.cols()));
  if (rows < 2) fail(errc::invalid_argument, "need at least 2 states");

  const int s = static_cast<int>(rows);
  Eigen::MatrixXd q = raw;
  for (int i = 0; i < s; ++i) {
    for (int j = 0; j < s; ++j) {
      if (i == j) continue;
      if (q(i, j) < -tolerance)
        fail(errc::negative_off_diagonal,
             "rate (" + std::to_string(i) + "," + std::to_string(j) + ") = " +
                 std::to_string(q(i, j)));
      if (q(i, j) < 0.0) q(i, j) = 0.0;
    }
  }
  for (int i = 0; i < s; ++i) {
    double row_sum = 0.0;
    for (int j = 0; j < s; ++j)
      if (j != i) row_sum += q(i, j);
    const double scale = std::max(1.0, row_sum);
    if (std::abs(q(i, i) + row_sum) > tolerance * scale)
      fail(errc::row_sum_violation,
           "row " + std::to_string(i) + " sums to " +
               std::to_string(q(i, i) + row_sum));
    q(i, i) = -row_sum;  // exact zero row sum from here on
  }
  return Generator{std::move(q)};
}

InitialDistribution validate_distribution(const Eigen::VectorXd& probs,
                                          double tolerance) {
  if (probs.size() < 2) fail(errc::invalid_argument, "need at least 2 states");
  for (Eigen::Index i = 0; i < probs.size(); ++i)
    if (probs(i) < -tolerance)
      fail(errc::invalid_argument,
           "negative probability at state " + std::to_string(i));
  Eigen::VectorXd p = probs.cwiseMax(0.0);
  const double mass = p.sum();
  if (std::abs(mass - 1.0) > tolerance)
    fail(errc::invalid_argument,
         "probabilities sum to " + std::to_string(mass));
  p /= mass;
  return InitialDistribution{std::move(p)};
}

StatePartition make_partition(int num_states, std::vector<int> working_states) {
  if (num_states < 2) fail(errc::invalid_argument, "need at least 2 states");
  if (working_states.empty())
    fail(errc::empty_working_set, "no working states given");

  std::sort(working_states.begin(), working_states.end());
  for (std::size_t k = 0; k < working_states.size(); ++k) {
    const int w = working_states[k];
    if (w < 0 || w >= num_states)
      fail(errc::invalid_argument,
           "working state " + std::to_string(w) + " out of range");
    if (k > 0 && working_states[k - 1] == w)
      fail(errc::invalid_argument,
           "duplicate working state " + std::to_string(w));
  }

  StatePartition part;
  part.working = std::move(working_states);
  std::size_t next = 0;
  for (int i = 0; i < num_states; ++i) {
    if (next < part.working.size() && part.working[next] == i)
      ++next;
    else
      part.failure.push_back(i);
  }
  if (part.failure.empty())
    fail(errc::invalid_argument, "every state is working; partition needs a non-empty failure side");
  return part;
}

}  // namespace ctmr
