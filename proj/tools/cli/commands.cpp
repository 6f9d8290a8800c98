#include "commands.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>

#include "json.hpp"

#include "ctmr/errors.hpp"
#include "ctmr/estimation.hpp"
#include "ctmr/model_io.hpp"
#include "ctmr/stationary.hpp"
#include "ctmr/transition.hpp"
#include "ingest.hpp"

namespace ctmr::cli {

namespace {

using ordered_json = nlohmann::ordered_json;
namespace fs = std::filesystem;

ordered_json matrix_to_json(const Eigen::MatrixXd& m) {
  ordered_json rows = ordered_json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    ordered_json row = ordered_json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

ordered_json vector_to_json(const Eigen::VectorXd& v) {
  ordered_json out = ordered_json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

void ensure_output_dir(const RunConfig& config) {
  std::error_code ec;
  fs::create_directories(config.output_dir, ec);
  if (ec)
    fail(errc::io_error, "cannot create output directory " + config.output_dir);
}

void write_json_file(const std::string& path, const ordered_json& doc) {
  std::ofstream out(path);
  if (!out) fail(errc::io_error, "cannot write " + path);
  out << doc.dump(2) << "\n";
}

ordered_json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(errc::io_error, "cannot read " + path);
  ordered_json doc;
  try {
    in >> doc;
  } catch (const std::exception& e) {
    fail(errc::parse_error, path + ": " + e.what());
  }
  return doc;
}

std::string output_path(const RunConfig& config, const std::string& name) {
  return (fs::path(config.output_dir) / name).string();
}

}  // namespace

int exit_code_for(errc code) {
  switch (code) {
    case errc::truncation_failure:
    case errc::reducible:
    case errc::solver_failure:
    case errc::logarithm_failure:
    case errc::non_convergent:
    case errc::no_convergence:
      return 3;
    default:
      return 2;
  }
}

std::vector<SiteModel> collect_models(const RunConfig& config) {
  std::vector<SiteModel> models;
  const auto site_of = [](const fs::path& file) {
    std::string stem = file.stem().string();
    const std::string suffix = "_model";
    if (stem.size() > suffix.size() &&
        stem.compare(stem.size() - suffix.size(), suffix.size(), suffix) == 0)
      stem.resize(stem.size() - suffix.size());
    return stem;
  };

  if (!config.model_path.empty()) {
    models.push_back(
        {site_of(config.model_path), read_model_json(config.model_path)});
  } else {
    std::error_code ec;
    for (const auto& entry : fs::directory_iterator(config.output_dir, ec)) {
      const fs::path& file = entry.path();
      if (file.extension() == ".json" &&
          file.stem().string().ends_with("_model"))
        models.push_back({site_of(file), read_model_json(file.string())});
    }
  }
  if (models.empty())
    throw UsageError(
        "no model documents found; pass --input <model.json> or run fit first");

  std::sort(models.begin(), models.end(),
            [](const SiteModel& a, const SiteModel& b) { return a.site < b.site; });

  if (config.working_states_overridden)
    for (SiteModel& sm : models)
      sm.model.partition = make_partition(sm.model.generator.size(),
                                          config.working_states);
  return models;
}

int run_fit(const RunConfig& config) {
  if (config.inputs.empty())
    throw UsageError("fit needs at least one input series (--input data.csv)");
  ensure_output_dir(config);

  std::vector<SiteInput> inputs = config.inputs;
  std::sort(inputs.begin(), inputs.end(),
            [](const SiteInput& a, const SiteInput& b) { return a.site < b.site; });

  int exit_code = 0;
  ordered_json sites = ordered_json::array();
  std::ofstream table(output_path(config, "summary.csv"));
  if (!table) fail(errc::io_error, "cannot write summary.csv");
  table << "site,weibull_scale,weibull_shape\n";

  for (const SiteInput& input : inputs) {
    ordered_json entry;
    entry["site"] = input.site;
    try {
      const IngestResult series = ingest_series(input.path, config);
      const std::vector<int> states = discretize(series.values, config.binning);
      const TransitionCounts counts = count_transitions(
          states, series.breaks, config.binning.num_states);
      const Eigen::MatrixXd p_hat =
          empirical_transition_matrix(counts, config.zero_row_policy);
      const EmbedResult embedded =
          embed_generator(p_hat, config.sampling_hours);
      const WeibullFit weibull = weibull_mle(series.values);

      // Long-run occupancy of the observed states doubles as the model's
      // initial law: like the generator it is estimated from the data.
      Eigen::VectorXd occupancy =
          Eigen::VectorXd::Zero(config.binning.num_states);
      for (int s : states) occupancy(s) += 1.0;
      occupancy /= static_cast<double>(states.size());

      ModelDocument doc;
      doc.generator = embedded.generator;
      doc.alpha = validate_distribution(occupancy, 1e-9);
      doc.partition =
          make_partition(config.binning.num_states, config.working_states);

      const std::string model_file = input.site + "_model.json";
      write_model_json(output_path(config, model_file), doc);
      write_matrix_csv(output_path(config, input.site + "_phat.csv"), p_hat);
      write_matrix_csv(output_path(config, input.site + "_qhat.csv"),
                       embedded.generator.rates);

      entry["rows"] = series.rows;
      entry["dropped"] = series.dropped;
      entry["gap_breaks"] = series.gap_breaks;
      entry["day_breaks"] = series.day_breaks;
      entry["observations"] = counts.total_observations;
      entry["transitions_counted"] = counts.total_transitions();
      entry["weibull"] = {{"scale", weibull.params.scale},
                          {"shape", weibull.params.shape},
                          {"iterations", weibull.iterations},
                          {"zeros_dropped", weibull.zeros_dropped}};
      entry["embedding"] = {
          {"negativity_mass", embedded.negativity_mass},
          {"reconstruction_error", embedded.reconstruction_error}};
      entry["transition_matrix"] = matrix_to_json(p_hat);
      entry["generator"] = matrix_to_json(embedded.generator.rates);
      entry["occupancy"] = vector_to_json(doc.alpha.probs);
      entry["model_fingerprint"] =
          model_fingerprint(doc.generator, doc.alpha, doc.partition);
      entry["files"] = {{"model", model_file},
                        {"transition_matrix", input.site + "_phat.csv"},
                        {"generator", input.site + "_qhat.csv"}};

      write_json_file(output_path(config, input.site + "_report.json"), entry);
      table << input.site << "," << format_double(weibull.params.scale) << ","
            << format_double(weibull.params.shape) << "\n";
    } catch (const Error& e) {
      entry["error"] = {{"code", to_string(e.code())}, {"message", e.what()}};
      exit_code = std::max(exit_code, exit_code_for(e.code()));
    }
    sites.push_back(std::move(entry));
  }

  ordered_json summary;
  summary["command"] = "fit";
  summary["sites"] = std::move(sites);
  write_json_file(output_path(config, "summary.json"), summary);
  return exit_code;
}

int run_indicators(const RunConfig& config) {
  ensure_output_dir(config);
  const std::vector<SiteModel> models = collect_models(config);
  const std::vector<double> grid = expand_grid(config.grid);

  int exit_code = 0;
  ordered_json summary_sites = ordered_json::array();
  for (const SiteModel& sm : models) {
    const Generator& g = sm.model.generator;
    const StatePartition& part = sm.model.partition;
    const std::string fingerprint =
        model_fingerprint(g, sm.model.alpha, part);

    const std::vector<ResolvedInitial> initials =
        resolve_initials(config.initial, g, g.size());
    for (const ResolvedInitial& init : initials) {
      ordered_json entry;
      entry["site"] = sm.site;
      entry["initial"] = init.label;
      entry["model_fingerprint"] = fingerprint;
      try {
        SeriesOptions options;
        options.with_availability = config.with_availability;
        const IndicatorSeries series =
            indicator_series(g, init.alpha, part, grid, options);

        const std::string base = sm.site + "_" + init.label + "_indicators";
        write_series_csv(output_path(config, base + ".csv"), series);
        write_series_json(output_path(config, base + ".json"), series,
                          fingerprint);

        const InitialComparison start =
            initial_indicator_comparison(g, init.alpha, part);
        entry["files"] = {{"csv", base + ".csv"}, {"json", base + ".json"}};
        entry["t0"] = {{"rof", start.rof},
                       {"ror", start.ror},
                       {"roi", start.roi},
                       {"tmr", start.tmr},
                       {"dominance", to_string(start.dominance)}};
        try {
          const AsymptoticIndicators limits = asymptotic_indicators(g, part);
          entry["asymptotic"] = {{"rof", limits.rof},
                                 {"ror", limits.ror},
                                 {"roi", limits.roi},
                                 {"tmr", limits.tmr}};
        } catch (const Error& e) {
          // A reducible estimate has no unique long-run law; the transient
          // series above still stands, so record and move on.
          if (e.code() != errc::reducible) throw;
          entry["asymptotic"] = {{"error", to_string(e.code())},
                                 {"message", e.what()}};
          exit_code = std::max(exit_code, exit_code_for(e.code()));
        }
      } catch (const Error& e) {
        entry["error"] = {{"code", to_string(e.code())},
                          {"message", e.what()}};
        exit_code = std::max(exit_code, exit_code_for(e.code()));
      }
      summary_sites.push_back(std::move(entry));
    }
  }

  ordered_json summary;
  summary["command"] = "indicators";
  summary["grid"] = {{"start", config.grid.start},
                     {"stop", config.grid.stop},
                     {"points", config.grid.points},
                     {"spacing", config.grid.log_spacing ? "log" : "linear"}};
  summary["series"] = std::move(summary_sites);
  write_json_file(output_path(config, "indicators_summary.json"), summary);
  return exit_code;
}

ValidationReport compare_series(const IndicatorSeries& closed,
                                const RateEstimate& estimate) {
  if (closed.grid != estimate.grid)
    fail(errc::invalid_argument, "comparison grids differ");

  ValidationReport report;
  const auto add = [&report](double t, const char* name, double c, double hat,
                             double se) {
    ValidationRow row;
    row.t = t;
    row.indicator = name;
    row.closed_form = c;
    row.estimate = hat;
    row.standard_error = se;
    if (se > 0.0)
      row.z = (hat - c) / se;
    else
      // zero spread: agreement is a zero score, disagreement is capped large
      row.z = (hat == c) ? 0.0 : 1e12;
    report.rows.push_back(row);
    report.max_abs_z = std::max(report.max_abs_z, std::abs(row.z));
  };

  for (std::size_t k = 0; k < closed.grid.size(); ++k) {
    const double t = closed.grid[k];
    add(t, "rof", closed.rof[k], estimate.rof[k], estimate.rof_se[k]);
    add(t, "ror", closed.ror[k], estimate.ror[k], estimate.ror_se[k]);
    add(t, "roi", closed.roi[k], estimate.roi[k], estimate.roi_se[k]);
    add(t, "tmr", closed.tmr[k], estimate.tmr[k], estimate.tmr_se[k]);
  }
  return report;
}

int run_validate(const RunConfig& config) {
  ensure_output_dir(config);
  const std::vector<SiteModel> models = collect_models(config);

  GridSpec validation_grid;
  validation_grid.start = config.grid.start;
  validation_grid.stop = config.grid.stop;
  validation_grid.points = config.validate.points;
  const std::vector<double> grid = expand_grid(validation_grid);

  constexpr double kThreshold = 5.0;
  double worst = 0.0;
  ordered_json sites = ordered_json::array();

  for (const SiteModel& sm : models) {
    const Generator& g = sm.model.generator;
    const StatePartition& part = sm.model.partition;
    const InitialDistribution& alpha = sm.model.alpha;

    // The window estimator averages the rate over (t, t + w], which differs
    // from the rate at t by O(w); the closed form evaluated at the window
    // midpoint matches it to O(w^2), so the z-scores test agreement instead
    // of the discretization bias.
    std::vector<double> midpoints = grid;
    for (double& t : midpoints) t += config.validate.window / 2.0;
    IndicatorSeries closed = indicator_series(g, alpha, part, midpoints);
    closed.grid = grid;  // rows stay labeled by window start

    const RateEstimate estimate =
        empirical_rates(g, alpha, part, grid, config.validate.ensemble,
                        config.validate.window, config.seed);
    const ValidationReport report = compare_series(closed, estimate);

    const std::string csv_name = sm.site + "_validation.csv";
    std::ofstream csv(output_path(config, csv_name));
    if (!csv) fail(errc::io_error, "cannot write " + csv_name);
    csv << "t,indicator,closed_form,estimate,se,z\n";
    for (const ValidationRow& row : report.rows)
      csv << format_double(row.t) << "," << row.indicator << ","
          << format_double(row.closed_form) << "," << format_double(row.estimate)
          << "," << format_double(row.standard_error) << ","
          << format_double(row.z) << "\n";

    ordered_json entry;
    entry["site"] = sm.site;
    entry["ensemble"] = config.validate.ensemble;
    entry["window"] = config.validate.window;
    entry["seed"] = config.seed;
    entry["max_abs_z"] = report.max_abs_z;
    entry["pass"] = report.max_abs_z <= kThreshold;
    entry["file"] = csv_name;
    sites.push_back(std::move(entry));
    worst = std::max(worst, report.max_abs_z);
  }

  ordered_json summary;
  summary["command"] = "validate";
  summary["threshold"] = kThreshold;
  summary["max_abs_z"] = worst;
  summary["pass"] = worst <= kThreshold;
  summary["sites"] = std::move(sites);
  write_json_file(output_path(config, "validation.json"), summary);
  return worst <= kThreshold ? 0 : 4;
}

int run_report(const RunConfig& config) {
  const std::string fit_path = output_path(config, "summary.json");
  const std::string ind_path = output_path(config, "indicators_summary.json");
  const std::string val_path = output_path(config, "validation.json");

  const bool have_fit = fs::exists(fit_path);
  const bool have_indicators = fs::exists(ind_path);
  const bool have_validation = fs::exists(val_path);
  if (!have_fit && !have_indicators && !have_validation)
    fail(errc::io_error,
         "nothing to report in " + config.output_dir +
             "; run fit, indicators or validate first");

  ordered_json report;
  report["command"] = "report";

  // site -> fields, keyed for the combined table
  struct Row {
    std::string site, initial = "-", dominance = "-";
    std::string scale = "-", shape = "-";
    std::string t0[4] = {"-", "-", "-", "-"};
    std::string inf[4] = {"-", "-", "-", "-"};
    std::string max_z = "-";
  };
  std::vector<Row> rows;
  const auto row_for = [&rows](const std::string& site,
                               const std::string& initial) -> Row& {
    for (Row& row : rows)
      if (row.site == site && (initial.empty() || row.initial == initial ||
                               row.initial == "-"))
        return row;
    rows.push_back(Row{});
    rows.back().site = site;
    return rows.back();
  };

  if (have_fit) {
    const ordered_json fit = read_json_file(fit_path);
    report["fit"] = fit;
    for (const auto& site : fit.at("sites")) {
      if (site.contains("error")) continue;
      Row& row = row_for(site.at("site"), "");
      row.scale = format_double(site.at("weibull").at("scale").get<double>());
      row.shape = format_double(site.at("weibull").at("shape").get<double>());
    }
  }
  if (have_indicators) {
    const ordered_json indicators = read_json_file(ind_path);
    report["indicators"] = indicators;
    for (const auto& entry : indicators.at("series")) {
      if (entry.contains("error")) continue;
      Row& row = row_for(entry.at("site"), entry.at("initial"));
      if (row.initial == "-") row.initial = entry.at("initial");
      row.dominance = entry.at("t0").at("dominance");
      const ordered_json& limits = entry.at("asymptotic");
      const char* names[4] = {"rof", "ror", "roi", "tmr"};
      for (int i = 0; i < 4; ++i) {
        row.t0[i] = format_double(entry.at("t0").at(names[i]).get<double>());
        if (limits.contains(names[i]))
          row.inf[i] = format_double(limits.at(names[i]).get<double>());
      }
    }
  }
  if (have_validation) {
    const ordered_json validation = read_json_file(val_path);
    report["validation"] = validation;
    for (const auto& entry : validation.at("sites")) {
      Row& row = row_for(entry.at("site"), "");
      row.max_z = format_double(entry.at("max_abs_z").get<double>());
    }
  }

  std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
    return a.site != b.site ? a.site < b.site : a.initial < b.initial;
  });

  std::ofstream table(output_path(config, "report.csv"));
  if (!table) fail(errc::io_error, "cannot write report.csv");
  table << "site,initial,weibull_scale,weibull_shape,rof0,ror0,roi0,tmr0,"
           "dominance,rof_inf,ror_inf,roi_inf,tmr_inf,max_abs_z\n";
  for (const Row& row : rows) {
    table << row.site << "," << row.initial << "," << row.scale << ","
          << row.shape;
    for (int i = 0; i < 4; ++i) table << "," << row.t0[i];
    table << "," << row.dominance;
    for (int i = 0; i < 4; ++i) table << "," << row.inf[i];
    table << "," << row.max_z << "\n";
  }

  write_json_file(output_path(config, "report.json"), report);
  return 0;
}

}  // namespace ctmr::cli
