#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "ctmr/generator.hpp"
#include "ctmr/mobility.hpp"

namespace ctmr {

/// Complete model document: rate matrix, initial distribution, partition and
/// optional state labels.
struct ModelDocument {
  Generator generator;
  InitialDistribution alpha;
  StatePartition partition;
  std::vector<std::string> labels;  // empty means default "state_<i>"
};

/// 64-bit FNV-1a hash over a canonical text form of (Q, alpha, partition),
/// printed as 16 hex digits. Stable across runs and platforms; any change to
/// the model changes the fingerprint.
std::string model_fingerprint(const Generator& g, const InitialDistribution& alpha,
                              const StatePartition& partition);

// --- JSON model documents ---------------------------------------------------
// Layout: {"states": s, "labels": [...], "Q": [[...], ...], "alpha": [...],
// "working": [...]}. "labels" is optional.

ModelDocument read_model_json(const std::string& path);
void write_model_json(const std::string& path, const ModelDocument& doc);

// --- Plain numeric CSV ------------------------------------------------------
// Row-major grid of numbers, no header. Doubles are printed with 17
// significant digits so a read-back is bit-exact.

Eigen::MatrixXd read_matrix_csv(const std::string& path);
void write_matrix_csv(const std::string& path, const Eigen::MatrixXd& m);
Eigen::VectorXd read_vector_csv(const std::string& path);
void write_vector_csv(const std::string& path, const Eigen::VectorXd& v);

// --- Indicator series -------------------------------------------------------

/// Header "t,rof,ror,roi,tmr" plus ",availability" when present.
void write_series_csv(const std::string& path, const IndicatorSeries& series);

/// Same content as JSON, tagged with the model fingerprint.
void write_series_json(const std::string& path, const IndicatorSeries& series,
                       const std::string& fingerprint);

/// %.17g rendering used by every CSV writer.
std::string format_double(double value);

}  // namespace ctmr
