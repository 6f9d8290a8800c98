#pragma once

#include <string>
#include <vector>

#include "run_config.hpp"

namespace ctmr::cli {

/// Cleaned time series ready for discretization. `breaks` uses the same
/// convention as count_transitions: index b means the pair (b, b+1) of
/// `values` must not be counted (gap in time, day boundary, or a dropped
/// sample between the two).
struct IngestResult {
  std::vector<double> values;
  std::vector<std::size_t> breaks;
  std::size_t rows = 0;             // data rows in the file
  std::size_t dropped = 0;          // outliers and unparseable values
  std::size_t gap_breaks = 0;       // non-contiguous timestamps
  std::size_t day_breaks = 0;       // midnight cuts (when enabled)
};

/// Reads one site CSV (header with timestamp and value columns named by the
/// config), drops outliers, and derives counting breaks from dropped rows,
/// timestamp gaps and day boundaries.
IngestResult ingest_series(const std::string& path, const RunConfig& config);

/// "YYYY-MM-DD[T ]HH:MM[:SS]" to hours since the civil epoch; also yields a
/// day key for day-boundary cuts. Throws Error(parse_error) on malformed
/// input.
struct ParsedTimestamp {
  double epoch_hours = 0.0;
  long day = 0;
};

ParsedTimestamp parse_timestamp(const std::string& text);

}  // namespace ctmr::cli
