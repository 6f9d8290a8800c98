#include "ctmr/stationary.hpp"

#include <cmath>
#include <string>

namespace ctmr {

namespace {

// Shared null-space solve: x with A x = 0, sum(x) = 1, where A's rows are
// linearly dependent (columns of a rate matrix or P^T - I). Rejects null
// spaces of dimension above one.
Eigen::VectorXd normalized_null_vector(const Eigen::MatrixXd& a,
                                       double residual_tol, double rank_tol) {
  const auto s = a.rows();

  Eigen::FullPivLU<Eigen::MatrixXd> rank_check(a);
  rank_check.setThreshold(rank_tol);
  if (rank_check.rank() < s - 1)
    fail(errc::reducible,
         "null space has dimension " + std::to_string(s - rank_check.rank()));

  Eigen::MatrixXd m = a;
  m.row(s - 1).setOnes();  // replace one dependent balance row by normalization
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(s);
  rhs(s - 1) = 1.0;

  Eigen::FullPivLU<Eigen::MatrixXd> lu(m);
  if (lu.rank() < s)
    fail(errc::solver_failure, "normalized balance system is singular");
  Eigen::VectorXd x = lu.solve(rhs);
  // One round of iterative refinement; pushes the balance residual to the
  // order of machine precision, which downstream asymptotics rely on.
  x -= lu.solve(m * x - rhs);

  for (Eigen::Index i = 0; i < s; ++i) {
    if (x(i) < -residual_tol)
      fail(errc::solver_failure,
           "stationary solve produced mass " + std::to_string(x(i)) +
               " at state " + std::to_string(i));
    if (x(i) < 0.0) x(i) = 0.0;
  }
  x /= x.sum();

  const double residual = (a * x).cwiseAbs().maxCoeff();
  if (residual > residual_tol)
    fail(errc::solver_failure,
         "balance residual " + std::to_string(residual) + " above tolerance");
  return x;
}

}  // namespace

Eigen::VectorXd stationary_distribution(const Generator& g, double residual_tol,
                                        double rank_tol) {
  return normalized_null_vector(g.rates.transpose(), residual_tol, rank_tol);
}

Eigen::MatrixXd embedded_chain(const Generator& g) {
  const int s = g.size();
  Eigen::MatrixXd r = Eigen::MatrixXd::Zero(s, s);
  for (int i = 0; i < s; ++i) {
    const double qi = g.exit_rate(i);
    if (qi <= 0.0) {
      r(i, i) = 1.0;  // absorbing: jump chain stays put
      continue;
    }
    for (int j = 0; j < s; ++j)
      if (j != i) r(i, j) = g.rates(i, j) / qi;
  }
  return r;
}

Eigen::VectorXd discrete_stationary(const Eigen::MatrixXd& transition,
                                    double residual_tol, double rank_tol) {
  if (transition.rows() != transition.cols())
    fail(errc::not_square, "transition matrix must be square");
  const auto s = transition.rows();
  const Eigen::MatrixXd a =
      transition.transpose() - Eigen::MatrixXd::Identity(s, s);
  return normalized_null_vector(a, residual_tol, rank_tol);
}

double spectral_gap(const Generator& g) {
  Eigen::EigenSolver<Eigen::MatrixXd> solver(g.rates);
  if (solver.info() != Eigen::Success)
    fail(errc::solver_failure, "eigenvalue computation failed");

  double max_rate = 0.0;
  for (int i = 0; i < g.size(); ++i)
    max_rate = std::max(max_rate, g.exit_rate(i));
  const double zero_cutoff = 1e-9 * std::max(1.0, max_rate);

  double gap = 0.0;
  bool found = false;
  for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
    const double decay = -solver.eigenvalues()(i).real();
    if (decay <= zero_cutoff) continue;
    if (!found || decay < gap) gap = decay;
    found = true;
  }
  return found ? gap : 0.0;
}

}  // namespace ctmr
