#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ctmr/estimation.hpp"
#include "ctmr/generator.hpp"

namespace ctmr::cli {

struct SiteInput {
  std::string site;
  std::string path;
};

struct GridSpec {
  double start = 0.0;
  double stop = 72.0;
  int points = 289;  // 15-minute resolution over three days
  bool log_spacing = false;
};

struct InitialSpec {
  enum class Kind { PointMass, Explicit, Stationary };
  Kind kind = Kind::PointMass;
  std::vector<int> states = {0};     // one series per state for PointMass
  std::vector<double> probs;         // Explicit only
};

struct ValidateSpec {
  std::int64_t ensemble = 100000;
  double window = 0.01;
  int points = 10;
};

/// Everything a command run needs, merged from the JSON config file and
/// command-line overrides (flags win).
struct RunConfig {
  std::vector<SiteInput> inputs;        // raw series for fit
  std::string model_path;               // model document for indicators/validate
  std::string output_dir = "out";

  std::string timestamp_column = "timestamp";
  std::string value_column = "value";
  double sampling_hours = 1.0;
  bool day_breaks = true;               // cut counting at day boundaries
  double max_speed = 50.0;
  BinningScheme binning;
  ZeroRowPolicy zero_row_policy = ZeroRowPolicy::SelfLoop;

  std::vector<int> working_states = {2, 3, 4, 5, 6, 7, 8};
  // True when the config file or a flag named the working set explicitly; a
  // loaded model document's own partition wins otherwise.
  bool working_states_overridden = false;
  InitialSpec initial;
  GridSpec grid;
  bool with_availability = true;

  std::uint64_t seed = 1;
  ValidateSpec validate;
};

/// Command-line option violations; the driver turns these into usage errors
/// (exit code 1) rather than data errors.
class UsageError : public std::runtime_error {
 public:
  explicit UsageError(const std::string& what) : std::runtime_error(what) {}
};

/// Parses the JSON config file into a RunConfig. Unknown keys are rejected so
/// typos do not silently fall back to defaults.
RunConfig load_config(const std::string& path);

/// Flag-style overrides, applied after the file. Empty strings mean absent.
struct Overrides {
  std::vector<std::string> inputs;
  std::string output_dir;
  std::string grid;            // "start:stop:points" or "start:stop:points:log"
  std::string working_states;  // "2-8" or "2,3,4"
  int initial_state = -1;
  std::int64_t seed = -1;
};

void apply_overrides(RunConfig& config, const Overrides& overrides);

/// "2-8" or "0,3,5" to a sorted list of distinct state indices.
std::vector<int> parse_state_list(const std::string& text);

/// Expands a GridSpec into concrete time points (strictly increasing).
std::vector<double> expand_grid(const GridSpec& spec);

/// Initial distributions named by the spec: one per point-mass state, or a
/// single explicit/stationary law. Labels name output files.
struct ResolvedInitial {
  std::string label;
  InitialDistribution alpha;
};

std::vector<ResolvedInitial> resolve_initials(const InitialSpec& spec,
                                              const Generator& g,
                                              int num_states);

}  // namespace ctmr::cli
