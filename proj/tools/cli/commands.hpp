#pragma once

#include <string>
#include <vector>

#include "ctmr/errors.hpp"
#include "ctmr/mobility.hpp"
#include "ctmr/model_io.hpp"
#include "ctmr/simulate.hpp"
#include "run_config.hpp"

namespace ctmr::cli {

// Subcommand entry points. Each returns the process exit code: 0 success,
// 2 data error, 3 numerical failure, 4 validation mismatch. Usage problems
// throw UsageError and are mapped to 1 by the driver.

/// Estimates a model per input site: ingest, discretize, count, embed, fit
/// the marginal Weibull. Per-site failures are recorded in the summary
/// without aborting the remaining sites.
int run_fit(const RunConfig& config);

/// Evaluates indicator series for a model document (or every model fitted
/// into the output directory), one CSV per site and initial law, plus a JSON
/// summary of start and long-run values.
int run_indicators(const RunConfig& config);

/// Simulation cross-check: closed-form indicator series against the
/// event-counting estimate, with z-scores. Nonzero exit when any |z| > 5.
int run_validate(const RunConfig& config);

/// Collects fit, indicator and validation outputs from the output directory
/// into one combined report (JSON and a per-site CSV table).
int run_report(const RunConfig& config);

/// Process exit code for a library error: 3 for numerical failures
/// (truncation, reducibility, solver, logarithm, convergence), 2 otherwise.
int exit_code_for(errc code);

// --- pieces exposed for testing --------------------------------------------

struct SiteModel {
  std::string site;
  ModelDocument model;
};

/// Model documents a command should operate on: the explicit --input model if
/// given, otherwise every *_model.json under the output directory.
std::vector<SiteModel> collect_models(const RunConfig& config);

struct ValidationRow {
  double t = 0.0;
  std::string indicator;
  double closed_form = 0.0;
  double estimate = 0.0;
  double standard_error = 0.0;
  double z = 0.0;
};

struct ValidationReport {
  std::vector<ValidationRow> rows;
  double max_abs_z = 0.0;
};

/// Side-by-side comparison of a closed-form series and an ensemble estimate
/// on the same grid. z is (estimate - closed)/se, 0 when both agree exactly
/// with zero spread, and capped at 1e12 when the spread is zero but the
/// values differ.
ValidationReport compare_series(const IndicatorSeries& closed,
                                const RateEstimate& estimate);

}  // namespace ctmr::cli
