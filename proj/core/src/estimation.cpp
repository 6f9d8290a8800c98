#include "ctmr/estimation.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <string>
#include <unordered_set>

#include "ctmr/transition.hpp"

namespace ctmr {

std::vector<int> discretize(const std::vector<double>& series,
                            const BinningScheme& scheme) {
  if (series.empty()) fail(errc::empty_series, "nothing to discretize");
  if (!(scheme.bin_width > 0.0))
    fail(errc::invalid_argument, "bin width must be positive");
  if (scheme.num_states < 1)
    fail(errc::invalid_argument, "need at least one state");

  std::vector<int> states;
  states.reserve(series.size());
  for (double v : series) {
    if (!(v >= scheme.lower_bound))
      fail(errc::invalid_argument,
           "sample " + std::to_string(v) + " below bin lower bound; filter first");
    int k = static_cast<int>(std::floor((v - scheme.lower_bound) / scheme.bin_width));
    if (k >= scheme.num_states) k = scheme.num_states - 1;  // top bin open above
    states.push_back(k);
  }
  return states;
}

FilterReport filter_outliers(const std::vector<double>& series,
                             double max_speed) {
  FilterReport report;
  report.kept.reserve(series.size());
  bool pending_break = false;
  for (double v : series) {
    if (v < 0.0 || v > max_speed) {
      ++report.dropped;
      pending_break = !report.kept.empty();
      continue;
    }
    if (pending_break) {
      report.breaks.push_back(report.kept.size() - 1);
      pending_break = false;
    }
    report.kept.push_back(v);
  }
  return report;
}

TransitionCounts count_transitions(const std::vector<int>& states,
                                   const std::vector<std::size_t>& break_points,
                                   int num_states) {
  if (states.empty()) fail(errc::empty_series, "no states to count");
  if (num_states < 1) fail(errc::invalid_argument, "need at least one state");
  for (int s : states)
    if (s < 0 || s >= num_states)
      fail(errc::invalid_argument,
           "state " + std::to_string(s) + " out of range");

  const std::unordered_set<std::size_t> skip(break_points.begin(),
                                             break_points.end());
  TransitionCounts out;
  out.counts = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>::Zero(
      num_states, num_states);
  out.total_observations = static_cast<std::int64_t>(states.size());
  for (std::size_t i = 1; i < states.size(); ++i)
    if (!skip.count(i - 1)) ++out.counts(states[i - 1], states[i]);
  return out;
}

Eigen::MatrixXd empirical_transition_matrix(const TransitionCounts& counts,
                                            ZeroRowPolicy policy) {
  const auto s = counts.counts.rows();
  if (s != counts.counts.cols())
    fail(errc::not_square, "count matrix must be square");
  if (counts.counts.sum() == 0)
    fail(errc::all_zero_counts, "no transitions observed");

  Eigen::MatrixXd p = Eigen::MatrixXd::Zero(s, s);
  for (Eigen::Index i = 0; i < s; ++i) {
    const std::int64_t row_total = counts.counts.row(i).sum();
    if (row_total == 0) {
      if (policy == ZeroRowPolicy::SelfLoop)
        p(i, i) = 1.0;
      else
        p.row(i).setConstant(1.0 / static_cast<double>(s));
      continue;
    }
    for (Eigen::Index j = 0; j < s; ++j)
      p(i, j) = static_cast<double>(counts.counts(i, j)) /
                static_cast<double>(row_total);
  }
  return p;
}

EmbedResult embed_generator(const Eigen::MatrixXd& p, double dt,
                            const EmbedConfig& config) {
  if (p.rows() != p.cols())
    fail(errc::not_square, "transition matrix must be square");
  if (p.rows() < 2) fail(errc::invalid_argument, "need at least 2 states");
  if (!(dt > 0.0)) fail(errc::invalid_argument, "sampling interval must be positive");

  const auto s = p.rows();
  for (Eigen::Index i = 0; i < s; ++i) {
    if (std::abs(p.row(i).sum() - 1.0) > config.stochastic_tol)
      fail(errc::invalid_argument,
           "row " + std::to_string(i) + " is not stochastic");
    for (Eigen::Index j = 0; j < s; ++j)
      if (p(i, j) < -config.stochastic_tol)
        fail(errc::invalid_argument, "negative probability entry");
  }

  // No principal logarithm when an eigenvalue sits on the closed negative
  // real axis; that is also where the embedding genuinely breaks down.
  Eigen::EigenSolver<Eigen::MatrixXd> es(p);
  if (es.info() != Eigen::Success)
    fail(errc::solver_failure, "eigenvalue computation failed");
  for (Eigen::Index i = 0; i < s; ++i) {
    const auto ev = es.eigenvalues()(i);
    if (std::abs(ev.imag()) <= 1e-12 && ev.real() <= 1e-14)
      fail(errc::logarithm_failure,
           "eigenvalue " + std::to_string(ev.real()) +
               " on the closed negative real axis");
  }

  const Eigen::MatrixXd log_p = p.log();
  if (!log_p.allFinite())
    fail(errc::non_convergent, "matrix logarithm did not converge");

  const Eigen::MatrixXd candidate = log_p / dt;

  EmbedResult result;
  Eigen::MatrixXd q = Eigen::MatrixXd::Zero(s, s);
  for (Eigen::Index i = 0; i < s; ++i) {
    double row_sum = 0.0;
    for (Eigen::Index j = 0; j < s; ++j) {
      if (i == j) continue;
      const double rate = candidate(i, j);
      if (rate < 0.0)
        result.negativity_mass -= rate;
      else
        q(i, j) = rate;
      row_sum += q(i, j);
    }
    q(i, i) = -row_sum;  // projection keeps zero row sums exact
  }

  result.generator = validate_generator(q);
  result.reconstruction_error =
      (uniformized_exponential(result.generator.rates, dt, config.tail_tol) - p)
          .cwiseAbs()
          .maxCoeff();
  return result;
}

}  // namespace ctmr
