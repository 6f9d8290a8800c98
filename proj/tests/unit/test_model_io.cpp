#include "doctest.h"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include <Eigen/Dense>

#include "ctmr/model_io.hpp"
#include "ctmr/rng.hpp"
#include "testutil.hpp"

using namespace ctmr;

namespace {

struct TempDir {
  std::filesystem::path path;
  TempDir() {
    path = std::filesystem::temp_directory_path() /
           ("ctmr_io_test_" + std::to_string(::getpid()));
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

ModelDocument sample_model() {
  Xoshiro256pp rng(0x10u);
  ModelDocument doc;
  doc.generator = testutil::random_generator(4, rng, 1.5);
  doc.alpha = testutil::random_distribution(4, rng);
  doc.partition = make_partition(4, {0, 1, 2});
  return doc;
}

}  // namespace

TEST_CASE("model documents round-trip through JSON exactly") {
  const TempDir dir;
  const ModelDocument doc = sample_model();
  write_model_json(dir.file("model.json"), doc);
  const ModelDocument back = read_model_json(dir.file("model.json"));

  CHECK(back.generator.rates == doc.generator.rates);
  CHECK(back.alpha.probs == doc.alpha.probs);
  CHECK(back.partition.working == doc.partition.working);
  CHECK(back.partition.failure == doc.partition.failure);
  CHECK(back.labels == std::vector<std::string>{"state_0", "state_1",
                                                "state_2", "state_3"});
}

TEST_CASE("fingerprints are stable and sensitive") {
  const ModelDocument doc = sample_model();
  const std::string fp1 =
      model_fingerprint(doc.generator, doc.alpha, doc.partition);
  const std::string fp2 =
      model_fingerprint(doc.generator, doc.alpha, doc.partition);
  CHECK(fp1 == fp2);
  CHECK(fp1.size() == 16);

  ModelDocument changed = doc;
  changed.generator.rates(0, 1) += 1e-9;
  changed.generator.rates(0, 0) -= 1e-9;
  CHECK(model_fingerprint(changed.generator, changed.alpha, changed.partition) !=
        fp1);

  const StatePartition other = make_partition(4, {0, 1});
  CHECK(model_fingerprint(doc.generator, doc.alpha, other) != fp1);
}

TEST_CASE("fingerprint survives a JSON round trip") {
  const TempDir dir;
  const ModelDocument doc = sample_model();
  write_model_json(dir.file("model.json"), doc);
  const ModelDocument back = read_model_json(dir.file("model.json"));
  CHECK(model_fingerprint(back.generator, back.alpha, back.partition) ==
        model_fingerprint(doc.generator, doc.alpha, doc.partition));
}

TEST_CASE("matrix CSV round-trips bit for bit") {
  const TempDir dir;
  Xoshiro256pp rng(0x20u);
  Eigen::MatrixXd m(3, 5);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 5; ++j)
      m(i, j) = (rng.uniform() - 0.5) * std::pow(10.0, (int)(rng.next() % 7) - 3);
  write_matrix_csv(dir.file("m.csv"), m);
  CHECK(read_matrix_csv(dir.file("m.csv")) == m);
}

TEST_CASE("vector CSV reads both layouts") {
  const TempDir dir;
  Eigen::VectorXd v(4);
  v << 1.5, -2.25, 3.75, 0.0;
  write_vector_csv(dir.file("v.csv"), v);
  CHECK(read_vector_csv(dir.file("v.csv")) == v);

  std::ofstream column(dir.file("col.csv"));
  column << "1.5\n-2.25\n3.75\n0\n";
  column.close();
  CHECK(read_vector_csv(dir.file("col.csv")) == v);
}

TEST_CASE("series CSV carries the exact header") {
  const TempDir dir;
  IndicatorSeries series;
  series.grid = {0.0, 0.25};
  series.rof = {1.0, 0.875};
  series.ror = {0.0, 0.125};
  series.roi = {1.0, 0.9};
  series.tmr = {2.0, 1.9};

  write_series_csv(dir.file("series.csv"), series);
  std::ifstream in(dir.file("series.csv"));
  std::string line;
  std::getline(in, line);
  CHECK(line == "t,rof,ror,roi,tmr");
  std::getline(in, line);
  CHECK(line == "0,1,0,1,2");

  series.availability = std::vector<double>{1.0, 0.99};
  write_series_csv(dir.file("series_a.csv"), series);
  std::ifstream in2(dir.file("series_a.csv"));
  std::getline(in2, line);
  CHECK(line == "t,rof,ror,roi,tmr,availability");
}

TEST_CASE("series JSON is tagged with the fingerprint") {
  const TempDir dir;
  IndicatorSeries series;
  series.grid = {0.0};
  series.rof = {1.0};
  series.ror = {0.0};
  series.roi = {0.5};
  series.tmr = {1.5};
  write_series_json(dir.file("series.json"), series, "0123456789abcdef");

  std::ifstream in(dir.file("series.json"));
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  CHECK(text.find("\"model_fingerprint\": \"0123456789abcdef\"") !=
        std::string::npos);
}

TEST_CASE("IO failures carry their category") {
  try {
    read_model_json("/nonexistent/path/model.json");
    FAIL("expected io_error");
  } catch (const Error& e) {
    CHECK(e.code() == errc::io_error);
  }

  const TempDir dir;
  std::ofstream bad(dir.file("bad.json"));
  bad << "{ not json";
  bad.close();
  try {
    read_model_json(dir.file("bad.json"));
    FAIL("expected parse_error");
  } catch (const Error& e) {
    CHECK(e.code() == errc::parse_error);
  }

  std::ofstream wrong(dir.file("wrong.json"));
  wrong << R"({"states": 2, "Q": [[-1.0, 1.0]], "alpha": [1.0, 0.0], "working": [0]})";
  wrong.close();
  try {
    read_model_json(dir.file("wrong.json"));
    FAIL("expected parse_error");
  } catch (const Error& e) {
    CHECK(e.code() == errc::parse_error);
  }

  std::ofstream ragged(dir.file("ragged.csv"));
  ragged << "1,2\n3\n";
  ragged.close();
  CHECK_THROWS_AS(read_matrix_csv(dir.file("ragged.csv")), Error);
}
