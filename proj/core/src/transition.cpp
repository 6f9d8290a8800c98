#include "ctmr/transition.hpp"

#include <cmath>
#include <string>

namespace ctmr {

namespace {

// Largest rate*t handled by a single truncated series. Above this the
// argument is halved and the result squared; keeps the Poisson weights away
// from underflow and the term count modest.
constexpr double kMaxSeriesArgument = 64.0;

void check_sub_generator(const Eigen::MatrixXd& m) {
  if (m.rows() != m.cols())
    fail(errc::not_square, "exponential needs a square matrix");
  if (m.rows() == 0) fail(errc::invalid_argument, "empty matrix");
}

}  // namespace

Eigen::MatrixXd uniformized_exponential(const Eigen::MatrixXd& sub_generator,
                                        double t, double tail_tol,
                                        long max_terms) {
  check_sub_generator(sub_generator);
  if (!(t >= 0.0)) fail(errc::invalid_argument, "time must be nonnegative");

  const auto s = sub_generator.rows();
  const Eigen::MatrixXd identity = Eigen::MatrixXd::Identity(s, s);

  double rate = 0.0;
  for (Eigen::Index i = 0; i < s; ++i)
    rate = std::max(rate, -sub_generator(i, i));
  if (t == 0.0 || rate == 0.0) return identity;

  int squarings = 0;
  double step = t;
  while (rate * step > kMaxSeriesArgument) {
    step *= 0.5;
    ++squarings;
  }

  // A proper generator block has exact zero row sums; only then may rows be
  // renormalized to counter the mass the truncation sheds (the defect would
  // otherwise double with every squaring). Substochastic blocks lose mass
  // legitimately and are left alone.
  double max_abs_row_sum = 0.0;
  for (Eigen::Index i = 0; i < s; ++i)
    max_abs_row_sum = std::max(max_abs_row_sum,
                               std::abs(sub_generator.row(i).sum()));
  const bool stochastic = max_abs_row_sum <= 1e-12 * std::max(1.0, rate);
  const auto renormalize_rows = [stochastic](Eigen::MatrixXd& m) {
    if (!stochastic) return;
    for (Eigen::Index i = 0; i < m.rows(); ++i) m.row(i) /= m.row(i).sum();
  };

  // B = I + M/rate is entrywise nonnegative with row sums <= 1.
  Eigen::MatrixXd b = identity + sub_generator / rate;
  b = b.cwiseMax(0.0);

  const double a = rate * step;
  const long cap = max_terms > 0
                       ? max_terms
                       : static_cast<long>(10.0 * a) + 100;

  Eigen::MatrixXd power = identity;
  double weight = std::exp(-a);
  Eigen::MatrixXd sum = weight * identity;
  double tail = 1.0 - weight;

  long n = 0;
  while (tail >= tail_tol) {
    if (++n > cap)
      fail(errc::truncation_failure,
           "series cap of " + std::to_string(cap) +
               " terms hit before tail fell below tolerance");
    power = power * b;
    weight *= a / static_cast<double>(n);
    sum.noalias() += weight * power;
    tail -= weight;
  }

  renormalize_rows(sum);
  for (int k = 0; k < squarings; ++k) {
    sum = sum * sum;
    renormalize_rows(sum);
  }

  // Exact nonnegativity is structural; the clamp only shaves rounding dust
  // above one.
  return sum.cwiseMax(0.0).cwiseMin(1.0);
}

TransitionMatrix transition_matrix(const Generator& g, double t,
                                   double tail_tol, double row_sum_tol) {
  Eigen::MatrixXd p = uniformized_exponential(g.rates, t, tail_tol);
  for (Eigen::Index i = 0; i < p.rows(); ++i) {
    const double row_sum = p.row(i).sum();
    if (std::abs(row_sum - 1.0) > row_sum_tol)
      fail(errc::row_sum_violation,
           "row " + std::to_string(i) + " of P(" + std::to_string(t) +
               ") sums to " + std::to_string(row_sum));
  }
  return TransitionMatrix{t, std::move(p)};
}

Eigen::VectorXd unconditional_distribution(const Generator& g,
                                           const InitialDistribution& alpha,
                                           double t, double tail_tol) {
  if (alpha.size() != g.size())
    fail(errc::invalid_argument, "distribution size does not match generator");
  const TransitionMatrix p = transition_matrix(g, t, tail_tol);
  return p.probs.transpose() * alpha.probs;
}

double availability(const Generator& g, const InitialDistribution& alpha,
                    const StatePartition& partition, double t,
                    double tail_tol) {
  if (partition.size() != g.size())
    fail(errc::invalid_argument, "partition size does not match generator");
  const Eigen::VectorXd p = unconditional_distribution(g, alpha, t, tail_tol);
  double up = 0.0;
  for (int w : partition.working) up += p(w);
  return std::min(1.0, std::max(0.0, up));
}

double reliability(const Generator& g, const InitialDistribution& alpha,
                   const StatePartition& partition, double t,
                   double tail_tol) {
  if (partition.size() != g.size())
    fail(errc::invalid_argument, "partition size does not match generator");
  if (alpha.size() != g.size())
    fail(errc::invalid_argument, "distribution size does not match generator");
  if (partition.working.empty())
    fail(errc::empty_working_set, "reliability needs a working subset");

  const auto m = static_cast<Eigen::Index>(partition.working.size());
  Eigen::MatrixXd q_ww(m, m);
  Eigen::VectorXd alpha_w(m);
  for (Eigen::Index a = 0; a < m; ++a) {
    alpha_w(a) = alpha.probs(partition.working[static_cast<std::size_t>(a)]);
    for (Eigen::Index b = 0; b < m; ++b)
      q_ww(a, b) = g.rates(partition.working[static_cast<std::size_t>(a)],
                           partition.working[static_cast<std::size_t>(b)]);
  }

  // The working block is a sub-generator; its exponential is substochastic
  // and the surviving mass is the no-failure probability.
  const Eigen::MatrixXd e = uniformized_exponential(q_ww, t, tail_tol);
  const double r = (alpha_w.transpose() * e).sum();
  return std::min(1.0, std::max(0.0, r));
}

}  // namespace ctmr
