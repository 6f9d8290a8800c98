#include "ingest.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "ctmr/errors.hpp"

namespace ctmr::cli {

namespace {

// Days since 1970-01-01 for a civil date (proleptic Gregorian).
long days_from_civil(int y, int m, int d) {
  y -= m <= 2;
  const long era = (y >= 0 ? y : y - 399) / 400;
  const unsigned yoe = static_cast<unsigned>(y - era * 400);
  const unsigned doy = (153u * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
  const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
  return era * 146097 + static_cast<long>(doe) - 719468;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::stringstream stream(line);
  std::string cell;
  while (std::getline(stream, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.push_back("");
  return cells;
}

}  // namespace

ParsedTimestamp parse_timestamp(const std::string& text) {
  int y = 0, mo = 0, d = 0, h = 0, mi = 0, s = 0;
  char sep = 0;
  const int fields = std::sscanf(text.c_str(), "%4d-%2d-%2d%c%2d:%2d:%2d", &y,
                                 &mo, &d, &sep, &h, &mi, &s);
  if (fields < 6 || (sep != 'T' && sep != ' '))
    fail(errc::parse_error, "bad timestamp '" + text + "'");
  if (mo < 1 || mo > 12 || d < 1 || d > 31 || h > 23 || mi > 59 || s > 60)
    fail(errc::parse_error, "bad timestamp '" + text + "'");

  ParsedTimestamp out;
  out.day = days_from_civil(y, mo, d);
  out.epoch_hours = static_cast<double>(out.day) * 24.0 + h +
                    mi / 60.0 + s / 3600.0;
  return out;
}

IngestResult ingest_series(const std::string& path, const RunConfig& config) {
  std::ifstream in(path);
  if (!in) fail(errc::io_error, "cannot open " + path);

  std::string line;
  if (!std::getline(in, line)) fail(errc::empty_series, path + " is empty");
  if (!line.empty() && line.back() == '\r') line.pop_back();

  const std::vector<std::string> header = split_csv_line(line);
  int ts_col = -1, value_col = -1;
  for (std::size_t c = 0; c < header.size(); ++c) {
    if (header[c] == config.timestamp_column) ts_col = static_cast<int>(c);
    if (header[c] == config.value_column) value_col = static_cast<int>(c);
  }
  if (ts_col < 0)
    fail(errc::parse_error,
         path + ": no column '" + config.timestamp_column + "'");
  if (value_col < 0)
    fail(errc::parse_error, path + ": no column '" + config.value_column + "'");

  IngestResult result;
  bool have_previous = false;
  double previous_hours = 0.0;
  long previous_day = 0;
  bool pending_drop_break = false;

  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    ++result.rows;

    const std::vector<std::string> cells = split_csv_line(line);
    if (static_cast<int>(cells.size()) <= std::max(ts_col, value_col))
      fail(errc::parse_error,
           path + ": row " + std::to_string(result.rows) + " is short");

    const ParsedTimestamp ts = parse_timestamp(cells[ts_col]);

    double value = std::nan("");
    bool parse_ok = true;
    try {
      std::size_t consumed = 0;
      value = std::stod(cells[value_col], &consumed);
      if (consumed != cells[value_col].size()) parse_ok = false;
    } catch (const std::exception&) {
      parse_ok = false;
    }

    // Unparseable readings and physical outliers drop out the same way; both
    // sever the counting adjacency around them.
    if (!parse_ok || !std::isfinite(value) || value < 0.0 ||
        value > config.max_speed) {
      ++result.dropped;
      pending_drop_break = !result.values.empty();
      have_previous = false;
      continue;
    }

    if (!result.values.empty()) {
      bool cut = false;
      if (pending_drop_break) cut = true;
      if (have_previous) {
        const double gap = ts.epoch_hours - previous_hours;
        if (std::abs(gap - config.sampling_hours) > 1e-6) {
          cut = true;
          ++result.gap_breaks;
        } else if (config.day_breaks && ts.day != previous_day) {
          cut = true;
          ++result.day_breaks;
        }
      }
      if (cut) result.breaks.push_back(result.values.size() - 1);
    }

    result.values.push_back(value);
    pending_drop_break = false;
    have_previous = true;
    previous_hours = ts.epoch_hours;
    previous_day = ts.day;
  }

  if (result.values.empty())
    fail(errc::empty_series, path + " has no usable samples");
  return result;
}

}  // namespace ctmr::cli
