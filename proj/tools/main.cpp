#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "cli/commands.hpp"
#include "cli/run_config.hpp"
#include "ctmr/errors.hpp"

namespace {

struct CommonOptions {
  std::string config_path;
  std::vector<std::string> inputs;
  std::string output_dir;
  std::string grid;
  std::string working_states;
  int initial_state = -1;
  std::int64_t seed = -1;
};

void add_common_options(CLI::App* cmd, CommonOptions& opts) {
  cmd->add_option("-c,--config", opts.config_path, "JSON config file");
  cmd->add_option("-i,--input", opts.inputs,
                  "input file, repeatable: a wind-speed CSV for fit, a model "
                  "JSON for indicators/validate");
  cmd->add_option("-o,--output-dir", opts.output_dir,
                  "output directory (default: out)");
  cmd->add_option("--grid", opts.grid,
                  "evaluation grid as start:stop:points[:log]");
  cmd->add_option("--working-states", opts.working_states,
                  "working-state set, e.g. 2-8 or 0,3,5");
  cmd->add_option("--initial-state", opts.initial_state,
                  "start from a point mass in this state");
  cmd->add_option("--seed", opts.seed, "master seed for simulation");
}

ctmr::cli::RunConfig build_config(const CommonOptions& opts) {
  ctmr::cli::RunConfig config;
  if (!opts.config_path.empty())
    config = ctmr::cli::load_config(opts.config_path);
  ctmr::cli::Overrides overrides;
  overrides.inputs = opts.inputs;
  overrides.output_dir = opts.output_dir;
  overrides.grid = opts.grid;
  overrides.working_states = opts.working_states;
  overrides.initial_state = opts.initial_state;
  overrides.seed = opts.seed;
  ctmr::cli::apply_overrides(config, overrides);
  return config;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Instantaneous mobility indicators (failure, repair, inoccurrence and "
      "total mobility rates) for finite-state continuous-time Markov models, "
      "with model estimation from wind-speed series and a simulation "
      "cross-check."};
  app.set_version_flag("--version", "ctmr 0.1.0");
  app.require_subcommand(1);

  CommonOptions fit_opts, indicator_opts, validate_opts, report_opts;
  CLI::App* fit = app.add_subcommand(
      "fit", "estimate a rate matrix and Weibull law per input series");
  add_common_options(fit, fit_opts);
  CLI::App* indicators = app.add_subcommand(
      "indicators", "evaluate indicator series for fitted or given models");
  add_common_options(indicators, indicator_opts);
  CLI::App* validate = app.add_subcommand(
      "validate", "cross-check closed forms against event-counting simulation");
  add_common_options(validate, validate_opts);
  CLI::App* report = app.add_subcommand(
      "report", "combine fit, indicator and validation outputs");
  add_common_options(report, report_opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (fit->parsed()) return ctmr::cli::run_fit(build_config(fit_opts));
    if (indicators->parsed())
      return ctmr::cli::run_indicators(build_config(indicator_opts));
    if (validate->parsed())
      return ctmr::cli::run_validate(build_config(validate_opts));
    if (report->parsed())
      return ctmr::cli::run_report(build_config(report_opts));
  } catch (const ctmr::cli::UsageError& e) {
    std::fprintf(stderr, "usage error: %s\n", e.what());
    return 1;
  } catch (const ctmr::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return ctmr::cli::exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 1;
}
