#include "ctmr/model_io.hpp"

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace ctmr {

namespace {

using ordered_json = nlohmann::ordered_json;

std::ifstream open_for_read(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(errc::io_error, "cannot open " + path + " for reading");
  return in;
}

std::ofstream open_for_write(const std::string& path) {
  std::ofstream out(path);
  if (!out) fail(errc::io_error, "cannot open " + path + " for writing");
  return out;
}

std::uint64_t fnv1a64(std::uint64_t hash, const std::string& text) {
  for (unsigned char c : text) {
    hash ^= c;
    hash *= 0x100000001B3ULL;
  }
  return hash;
}

}  // namespace

std::string format_double(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

std::string model_fingerprint(const Generator& g,
                              const InitialDistribution& alpha,
                              const StatePartition& partition) {
  std::uint64_t hash = 0xCBF29CE484222325ULL;  // FNV offset basis
  hash = fnv1a64(hash, "Q");
  for (int i = 0; i < g.size(); ++i)
    for (int j = 0; j < g.size(); ++j)
      hash = fnv1a64(hash, format_double(g.rates(i, j)) + ",");
  hash = fnv1a64(hash, "alpha");
  for (int i = 0; i < alpha.size(); ++i)
    hash = fnv1a64(hash, format_double(alpha.probs(i)) + ",");
  hash = fnv1a64(hash, "working");
  for (int w : partition.working)
    hash = fnv1a64(hash, std::to_string(w) + ",");

  char buf[32];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(hash));
  return buf;
}

ModelDocument read_model_json(const std::string& path) {
  std::ifstream in = open_for_read(path);
  ordered_json doc;
  try {
    in >> doc;
  } catch (const std::exception& e) {
    fail(errc::parse_error, path + ": " + e.what());
  }

  try {
    const int states = doc.at("states").get<int>();
    const auto& q_rows = doc.at("Q");
    if (static_cast<int>(q_rows.size()) != states)
      fail(errc::parse_error, path + ": Q has wrong row count");
    Eigen::MatrixXd q(states, states);
    for (int i = 0; i < states; ++i) {
      if (static_cast<int>(q_rows[i].size()) != states)
        fail(errc::parse_error, path + ": Q row " + std::to_string(i) +
                                    " has wrong length");
      for (int j = 0; j < states; ++j) q(i, j) = q_rows[i][j].get<double>();
    }

    Eigen::VectorXd alpha(states);
    const auto& alpha_doc = doc.at("alpha");
    if (static_cast<int>(alpha_doc.size()) != states)
      fail(errc::parse_error, path + ": alpha has wrong length");
    for (int i = 0; i < states; ++i) alpha(i) = alpha_doc[i].get<double>();

    std::vector<int> working = doc.at("working").get<std::vector<int>>();

    ModelDocument model;
    model.generator = validate_generator(q);
    model.alpha = validate_distribution(alpha);
    model.partition = make_partition(states, std::move(working));
    if (doc.contains("labels")) {
      model.labels = doc["labels"].get<std::vector<std::string>>();
      if (static_cast<int>(model.labels.size()) != states)
        fail(errc::parse_error, path + ": labels have wrong length");
    }
    return model;
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    fail(errc::parse_error, path + ": " + e.what());
  }
}

void write_model_json(const std::string& path, const ModelDocument& doc) {
  const int s = doc.generator.size();
  ordered_json out;
  out["states"] = s;
  if (!doc.labels.empty())
    out["labels"] = doc.labels;
  else {
    std::vector<std::string> labels;
    for (int i = 0; i < s; ++i) labels.push_back("state_" + std::to_string(i));
    out["labels"] = labels;
  }
  ordered_json q_rows = ordered_json::array();
  for (int i = 0; i < s; ++i) {
    ordered_json row = ordered_json::array();
    for (int j = 0; j < s; ++j) row.push_back(doc.generator.rates(i, j));
    q_rows.push_back(std::move(row));
  }
  out["Q"] = std::move(q_rows);
  ordered_json alpha = ordered_json::array();
  for (int i = 0; i < s; ++i) alpha.push_back(doc.alpha.probs(i));
  out["alpha"] = std::move(alpha);
  out["working"] = doc.partition.working;

  std::ofstream stream = open_for_write(path);
  stream << out.dump(2) << "\n";
}

Eigen::MatrixXd read_matrix_csv(const std::string& path) {
  std::ifstream in = open_for_read(path);
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    std::stringstream cells(line);
    std::string cell;
    while (std::getline(cells, cell, ',')) {
      try {
        row.push_back(std::stod(cell));
      } catch (const std::exception&) {
        fail(errc::parse_error, path + ": bad number '" + cell + "'");
      }
    }
    if (!rows.empty() && row.size() != rows.front().size())
      fail(errc::parse_error, path + ": ragged rows");
    rows.push_back(std::move(row));
  }
  if (rows.empty()) fail(errc::parse_error, path + ": empty file");

  Eigen::MatrixXd m(rows.size(), rows.front().size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows.front().size(); ++j)
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
  return m;
}

void write_matrix_csv(const std::string& path, const Eigen::MatrixXd& m) {
  std::ofstream out = open_for_write(path);
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j > 0) out << ",";
      out << format_double(m(i, j));
    }
    out << "\n";
  }
}

Eigen::VectorXd read_vector_csv(const std::string& path) {
  const Eigen::MatrixXd m = read_matrix_csv(path);
  if (m.rows() == 1) return m.row(0).transpose();
  if (m.cols() == 1) return m.col(0);
  fail(errc::parse_error, path + ": expected a single row or column");
}

void write_vector_csv(const std::string& path, const Eigen::VectorXd& v) {
  write_matrix_csv(path, v.transpose());
}

void write_series_csv(const std::string& path, const IndicatorSeries& series) {
  std::ofstream out = open_for_write(path);
  out << "t,rof,ror,roi,tmr";
  if (series.availability) out << ",availability";
  out << "\n";
  for (std::size_t k = 0; k < series.grid.size(); ++k) {
    out << format_double(series.grid[k]) << "," << format_double(series.rof[k])
        << "," << format_double(series.ror[k]) << ","
        << format_double(series.roi[k]) << "," << format_double(series.tmr[k]);
    if (series.availability) out << "," << format_double((*series.availability)[k]);
    out << "\n";
  }
}

void write_series_json(const std::string& path, const IndicatorSeries& series,
                       const std::string& fingerprint) {
  ordered_json out;
  out["model_fingerprint"] = fingerprint;
  out["t"] = series.grid;
  out["rof"] = series.rof;
  out["ror"] = series.ror;
  out["roi"] = series.roi;
  out["tmr"] = series.tmr;
  if (series.availability) out["availability"] = *series.availability;
  std::ofstream stream = open_for_write(path);
  stream << out.dump(2) << "\n";
}

}  // namespace ctmr
