#include "ctmr/estimation.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

namespace ctmr {

namespace {

// Power sums of the sample at a given shape, computed against the largest
// log so x^k never overflows: weights w_i = exp(k*(ln x_i - ln x_max)).
struct PowerSums {
  double s0 = 0.0;  // sum of w
  double s1 = 0.0;  // sum of w * ln x
  double s2 = 0.0;  // sum of w * (ln x)^2
};

PowerSums power_sums(const std::vector<double>& log_x, double max_log,
                     double shape) {
  PowerSums sums;
  for (double lx : log_x) {
    const double w = std::exp(shape * (lx - max_log));
    sums.s0 += w;
    sums.s1 += w * lx;
    sums.s2 += w * lx * lx;
  }
  return sums;
}

// Profile stationarity condition in the shape alone. Strictly increasing in
// k, so a sign-changing bracket pins the root.
double profile_equation(const PowerSums& sums, double shape, double mean_log) {
  return sums.s1 / sums.s0 - 1.0 / shape - mean_log;
}

double profile_derivative(const PowerSums& sums, double shape) {
  const double ratio_var =
      sums.s2 / sums.s0 - (sums.s1 / sums.s0) * (sums.s1 / sums.s0);
  return ratio_var + 1.0 / (shape * shape);
}

}  // namespace

WeibullFit weibull_mle(const std::vector<double>& samples,
                       const WeibullConfig& config) {
  WeibullFit fit;
  std::vector<double> log_x;
  log_x.reserve(samples.size());
  for (double x : samples) {
    if (x <= 0.0)
      ++fit.zeros_dropped;
    else
      log_x.push_back(std::log(x));
  }
  if (log_x.size() < 2)
    fail(errc::invalid_argument,
         "need at least 2 positive samples, have " +
             std::to_string(log_x.size()));

  const auto [min_it, max_it] = std::minmax_element(log_x.begin(), log_x.end());
  const double max_log = *max_it;
  if (*max_it - *min_it <= 0.0)
    fail(errc::degenerate_sample, "all samples are identical");

  const double n = static_cast<double>(log_x.size());
  double mean_log = 0.0;
  for (double lx : log_x) mean_log += lx;
  mean_log /= n;

  // Moment start: k ~ 1.2 / sd(ln x) is close for everything Weibull-like.
  double var_log = 0.0;
  for (double lx : log_x) var_log += (lx - mean_log) * (lx - mean_log);
  var_log /= n;
  double shape = 1.2 / std::sqrt(var_log);

  // Sign-changing bracket around the root.
  double lo = shape, hi = shape;
  double g_lo = profile_equation(power_sums(log_x, max_log, lo), lo, mean_log);
  int guard = 0;
  while (g_lo > 0.0 && ++guard < 200) {
    lo *= 0.5;
    g_lo = profile_equation(power_sums(log_x, max_log, lo), lo, mean_log);
  }
  double g_hi = profile_equation(power_sums(log_x, max_log, hi), hi, mean_log);
  guard = 0;
  while (g_hi < 0.0 && ++guard < 200) {
    hi *= 2.0;
    g_hi = profile_equation(power_sums(log_x, max_log, hi), hi, mean_log);
  }
  if (g_lo > 0.0 || g_hi < 0.0)
    fail(errc::no_convergence, "could not bracket the shape equation");

  shape = std::min(std::max(shape, lo), hi);
  bool converged = false;
  for (int iter = 1; iter <= config.max_iters; ++iter) {
    fit.iterations = iter;
    const PowerSums sums = power_sums(log_x, max_log, shape);
    const double g = profile_equation(sums, shape, mean_log);
    if (g > 0.0)
      hi = shape;
    else
      lo = shape;

    double step = g / profile_derivative(sums, shape);
    double next = shape - step;
    if (!(next > lo) || !(next < hi)) {
      next = 0.5 * (lo + hi);  // Newton left the bracket; bisect instead
      step = next - shape;
    }
    shape = next;
    if (std::abs(step) < config.step_tol) {
      converged = true;
      break;
    }
  }
  if (!converged)
    fail(errc::no_convergence,
         "shape iteration did not settle in " +
             std::to_string(config.max_iters) + " iterations");

  const PowerSums sums = power_sums(log_x, max_log, shape);
  // Undo the overflow guard: sum(x^k) = exp(k*max_log) * s0.
  const double scale = std::exp(max_log + std::log(sums.s0 / n) / shape);

  fit.params.shape = shape;
  fit.params.scale = scale;
  return fit;
}

}  // namespace ctmr
