#include "run_config.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

#include "ctmr/errors.hpp"
#include "ctmr/stationary.hpp"

namespace ctmr::cli {

namespace {

using nlohmann::json;

std::string site_name_from_path(const std::string& path) {
  return std::filesystem::path(path).stem().string();
}

GridSpec parse_grid_spec(const json& doc) {
  GridSpec spec;
  spec.start = doc.value("start", spec.start);
  spec.stop = doc.value("stop", spec.stop);
  spec.points = doc.value("points", spec.points);
  const std::string spacing = doc.value("spacing", std::string("linear"));
  if (spacing == "log")
    spec.log_spacing = true;
  else if (spacing != "linear")
    fail(errc::parse_error, "grid spacing must be linear or log");
  return spec;
}

InitialSpec parse_initial_spec(const json& doc) {
  InitialSpec spec;
  const std::string kind = doc.value("type", std::string("point"));
  if (kind == "point") {
    spec.kind = InitialSpec::Kind::PointMass;
    if (doc.contains("states"))
      spec.states = doc["states"].get<std::vector<int>>();
    if (spec.states.empty())
      fail(errc::parse_error, "initial.states must not be empty");
  } else if (kind == "explicit") {
    spec.kind = InitialSpec::Kind::Explicit;
    spec.probs = doc.at("probs").get<std::vector<double>>();
  } else if (kind == "stationary") {
    spec.kind = InitialSpec::Kind::Stationary;
  } else {
    fail(errc::parse_error, "initial.type must be point, explicit or stationary");
  }
  return spec;
}

void reject_unknown_keys(const json& doc, const std::set<std::string>& known,
                         const std::string& where) {
  for (const auto& item : doc.items())
    if (!known.count(item.key()))
      fail(errc::parse_error, "unknown config key '" + item.key() + "' in " + where);
}

}  // namespace

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(errc::io_error, "cannot open config " + path);
  json doc;
  try {
    in >> doc;
  } catch (const std::exception& e) {
    fail(errc::parse_error, path + ": " + e.what());
  }

  reject_unknown_keys(
      doc,
      {"inputs", "model", "output_dir", "timestamp_column", "value_column",
       "sampling_hours", "day_breaks", "max_speed", "binning",
       "zero_row_policy", "working_states", "initial", "grid", "availability",
       "seed", "validate"},
      "config");

  RunConfig config;
  try {
    if (doc.contains("inputs")) {
      for (const auto& entry : doc["inputs"]) {
        SiteInput input;
        if (entry.is_string()) {
          input.path = entry.get<std::string>();
          input.site = site_name_from_path(input.path);
        } else {
          input.path = entry.at("path").get<std::string>();
          input.site = entry.value("site", site_name_from_path(input.path));
        }
        config.inputs.push_back(std::move(input));
      }
    }
    config.model_path = doc.value("model", config.model_path);
    config.output_dir = doc.value("output_dir", config.output_dir);
    config.timestamp_column =
        doc.value("timestamp_column", config.timestamp_column);
    config.value_column = doc.value("value_column", config.value_column);
    config.sampling_hours = doc.value("sampling_hours", config.sampling_hours);
    config.day_breaks = doc.value("day_breaks", config.day_breaks);
    config.max_speed = doc.value("max_speed", config.max_speed);
    if (doc.contains("binning")) {
      const auto& b = doc["binning"];
      reject_unknown_keys(b, {"bin_width", "num_states", "lower_bound"},
                          "binning");
      config.binning.bin_width = b.value("bin_width", config.binning.bin_width);
      config.binning.num_states =
          b.value("num_states", config.binning.num_states);
      config.binning.lower_bound =
          b.value("lower_bound", config.binning.lower_bound);
    }
    if (doc.contains("zero_row_policy")) {
      const std::string policy = doc["zero_row_policy"].get<std::string>();
      if (policy == "self_loop")
        config.zero_row_policy = ZeroRowPolicy::SelfLoop;
      else if (policy == "uniform")
        config.zero_row_policy = ZeroRowPolicy::Uniform;
      else
        fail(errc::parse_error, "zero_row_policy must be self_loop or uniform");
    }
    if (doc.contains("working_states")) {
      config.working_states = doc["working_states"].get<std::vector<int>>();
      config.working_states_overridden = true;
    }
    if (doc.contains("initial"))
      config.initial = parse_initial_spec(doc["initial"]);
    if (doc.contains("grid")) {
      reject_unknown_keys(doc["grid"], {"start", "stop", "points", "spacing"},
                          "grid");
      config.grid = parse_grid_spec(doc["grid"]);
    }
    config.with_availability = doc.value("availability", config.with_availability);
    config.seed = doc.value("seed", config.seed);
    if (doc.contains("validate")) {
      const auto& v = doc["validate"];
      reject_unknown_keys(v, {"ensemble", "window", "points"}, "validate");
      config.validate.ensemble = v.value("ensemble", config.validate.ensemble);
      config.validate.window = v.value("window", config.validate.window);
      config.validate.points = v.value("points", config.validate.points);
    }
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    fail(errc::parse_error, path + ": " + e.what());
  }
  return config;
}

std::vector<int> parse_state_list(const std::string& text) {
  std::vector<int> states;
  std::stringstream chunks(text);
  std::string chunk;
  while (std::getline(chunks, chunk, ',')) {
    if (chunk.empty()) throw UsageError("empty entry in state list");
    const auto dash = chunk.find('-', 1);  // allow a leading minus to fail later
    try {
      if (dash == std::string::npos) {
        states.push_back(std::stoi(chunk));
      } else {
        const int lo = std::stoi(chunk.substr(0, dash));
        const int hi = std::stoi(chunk.substr(dash + 1));
        if (hi < lo) throw UsageError("descending range '" + chunk + "'");
        for (int s = lo; s <= hi; ++s) states.push_back(s);
      }
    } catch (const UsageError&) {
      throw;
    } catch (const std::exception&) {
      throw UsageError("bad state list entry '" + chunk + "'");
    }
  }
  if (states.empty()) throw UsageError("state list is empty");
  std::sort(states.begin(), states.end());
  states.erase(std::unique(states.begin(), states.end()), states.end());
  return states;
}

void apply_overrides(RunConfig& config, const Overrides& overrides) {
  for (const std::string& path : overrides.inputs) {
    if (config.model_path.empty() &&
        std::filesystem::path(path).extension() == ".json")
      config.model_path = path;
    else
      config.inputs.push_back({site_name_from_path(path), path});
  }
  if (!overrides.output_dir.empty()) config.output_dir = overrides.output_dir;
  if (!overrides.working_states.empty()) {
    config.working_states = parse_state_list(overrides.working_states);
    config.working_states_overridden = true;
  }
  if (overrides.initial_state >= 0) {
    config.initial.kind = InitialSpec::Kind::PointMass;
    config.initial.states = {overrides.initial_state};
  }
  if (overrides.seed >= 0)
    config.seed = static_cast<std::uint64_t>(overrides.seed);
  if (!overrides.grid.empty()) {
    GridSpec spec;
    std::stringstream parts(overrides.grid);
    std::string part;
    std::vector<std::string> fields;
    while (std::getline(parts, part, ':')) fields.push_back(part);
    if (fields.size() < 3 || fields.size() > 4)
      throw UsageError("grid must be start:stop:points[:log]");
    try {
      spec.start = std::stod(fields[0]);
      spec.stop = std::stod(fields[1]);
      spec.points = std::stoi(fields[2]);
    } catch (const std::exception&) {
      throw UsageError("bad grid '" + overrides.grid + "'");
    }
    if (fields.size() == 4) {
      if (fields[3] == "log")
        spec.log_spacing = true;
      else if (fields[3] != "linear")
        throw UsageError("grid spacing must be linear or log");
    }
    config.grid = spec;
  }
}

std::vector<double> expand_grid(const GridSpec& spec) {
  if (spec.points < 1) fail(errc::empty_grid, "grid needs at least one point");
  if (spec.points == 1) return {spec.start};
  if (!(spec.stop > spec.start))
    fail(errc::invalid_argument, "grid stop must exceed start");

  std::vector<double> grid;
  grid.reserve(static_cast<std::size_t>(spec.points));
  if (spec.log_spacing) {
    if (!(spec.start > 0.0))
      fail(errc::invalid_argument, "log spacing needs a positive start");
    const double ratio = std::log(spec.stop / spec.start);
    for (int k = 0; k < spec.points; ++k)
      grid.push_back(spec.start *
                     std::exp(ratio * k / static_cast<double>(spec.points - 1)));
  } else {
    const double step = (spec.stop - spec.start) / (spec.points - 1);
    for (int k = 0; k < spec.points; ++k)
      grid.push_back(spec.start + step * k);
  }
  grid.back() = spec.stop;  // pin the endpoint against rounding
  return grid;
}

std::vector<ResolvedInitial> resolve_initials(const InitialSpec& spec,
                                              const Generator& g,
                                              int num_states) {
  std::vector<ResolvedInitial> out;
  switch (spec.kind) {
    case InitialSpec::Kind::PointMass:
      for (int s : spec.states)
        out.push_back({"state" + std::to_string(s),
                       InitialDistribution::point_mass(num_states, s)});
      break;
    case InitialSpec::Kind::Explicit: {
      Eigen::VectorXd p(static_cast<Eigen::Index>(spec.probs.size()));
      for (std::size_t i = 0; i < spec.probs.size(); ++i)
        p(static_cast<Eigen::Index>(i)) = spec.probs[i];
      out.push_back({"explicit", validate_distribution(p, 1e-9)});
      break;
    }
    case InitialSpec::Kind::Stationary:
      out.push_back(
          {"stationary", InitialDistribution{stationary_distribution(g)}});
      break;
  }
  for (const ResolvedInitial& init : out)
    if (init.alpha.size() != num_states)
      fail(errc::invalid_argument,
           "initial distribution size does not match the model");
  return out;
}

}  // namespace ctmr::cli
