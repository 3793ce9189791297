// Copyright 2026 The Dendrofeat Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "doctest.h"
#include "json.hpp"
#include "dendrofeat/dataset.hpp"
#include "dendrofeat/eval.hpp"
#include "dendrofeat/io.hpp"

using namespace dendrofeat;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "dendrofeat");
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

class Scratch {
 public:
  explicit Scratch(const std::string& name)
      : dir_(std::filesystem::temp_directory_path() / ("dendrofeat_cli_" + name)) {
    std::filesystem::remove_all(dir_);
    std::filesystem::create_directories(dir_);
  }
  ~Scratch() { std::filesystem::remove_all(dir_); }
  std::string path(const std::string& file) const { return (dir_ / file).string(); }
  void write(const std::string& file, const std::string& text) const { std::ofstream(dir_ / file) << text; }

 private:
  std::filesystem::path dir_;
};

}  // namespace

TEST_SUITE_BEGIN("cli");

TEST_CASE("features on the three-point line") {
  Scratch s("features");
  s.write("pts.csv", "0\n1\n3\n");
  const Run r = run({"features", "--input", s.path("pts.csv"), "--criterion", "single", "--level", "raw",
                     "--output", s.path("f.csv"), "--distances", s.path("d.csv")});
  REQUIRE(r.code == cli::kExitOk);
  const Matrix<double> f = read_matrix_csv(std::filesystem::path(s.path("f.csv")));
  Matrix<double> expect(3, 3);
  expect << 0, 1, 4, 1, 0, 4, 4, 4, 0;
  CHECK((pairwise_sq_euclidean(f).values() - expect).cwiseAbs().maxCoeff() <= 1e-9);
  CHECK(read_matrix_csv(std::filesystem::path(s.path("d.csv"))) == expect);

  const Run check = run({"check", "--input", s.path("d.csv")});
  CHECK(check.code == cli::kExitOk);
  CHECK(nlohmann::json::parse(check.out)["is_ultrametric"] == true);
}

TEST_CASE("features writes to stdout and honours --dims") {
  Scratch s("stdout");
  s.write("pts.csv", "x,y,label\n0,0,a\n1,0,a\n5,5,b\n6,5,b\n");
  const Run r = run({"features", "--input", s.path("pts.csv"), "--has-labels", "--criterion", "ward",
                     "--level", "level", "--dims", "1"});
  REQUIRE(r.code == cli::kExitOk);
  std::istringstream in(r.out);
  const Matrix<double> f = read_matrix_csv(in);
  CHECK(f.rows() == 4);
  CHECK(f.cols() == 1);
  CHECK(run({"features", "--input", s.path("pts.csv"), "--has-labels", "--dims", "9"}).code == cli::kExitData);
  CHECK(run({"features", "--input", s.path("pts.csv"), "--dims", "many"}).code == cli::kExitUsage);
}

TEST_CASE("check reports violations of raw distances") {
  Scratch s("check");
  s.write("d.csv", "0,1,9\n1,0,4\n9,4,0\n");
  const Run r = run({"check", "--input", s.path("d.csv")});
  CHECK(r.code == cli::kExitOk);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["is_ultrametric"] == false);
  CHECK(j["worst_violation"] == 5.0);
}

TEST_CASE("cluster, ensemble and eval round trip") {
  Scratch s("chain");
  s.write("f.csv", "0\n0.1\n10\n10.1\n");
  const Run c = run({"cluster", "--input", s.path("f.csv"), "--k", "2", "--restarts", "5",
                     "--output", s.path("a.csv"), "--diagnostics", s.path("diag.json")});
  REQUIRE(c.code == cli::kExitOk);
  CHECK(c.err.find("seed=42") != std::string::npos);
  const Labeling a = read_labels(std::filesystem::path(s.path("a.csv")));
  CHECK(a[0] == a[1]);
  CHECK(a[2] != a[1]);
  CHECK(nlohmann::json::parse(read_file(s.path("diag.json")))["inertia"].get<double>() ==
        doctest::Approx(0.01));

  const Run e = run({"ensemble", "--labels", s.path("a.csv"), "--labels", s.path("a.csv"), "--k", "2",
                     "--output", s.path("e.csv"), "--coassoc", s.path("s.csv"), "--trace", s.path("t.json")});
  REQUIRE(e.code == cli::kExitOk);
  CHECK(adjusted_rand(read_labels(std::filesystem::path(s.path("e.csv"))), a) == 1.0);
  CHECK(read_matrix_csv(std::filesystem::path(s.path("s.csv")))(0, 2) == -2.0);
  CHECK(nlohmann::json::parse(read_file(s.path("t.json")))["cost"] == 0);

  const Run v = run({"eval", "--a", s.path("a.csv"), "--b", s.path("a.csv")});
  REQUIRE(v.code == cli::kExitOk);
  const auto j = nlohmann::json::parse(v.out);
  CHECK(j["MI"] == 1.0);
  CHECK(j["Rand"] == 1.0);
  CHECK(j["VM"] == 1.0);
  const Run csv = run({"eval", "--a", s.path("a.csv"), "--b", s.path("a.csv"), "--format", "csv"});
  CHECK(csv.out == "MI,Rand,VM\n1,1,1\n");

  const Run spectral = run({"cluster", "--input", s.path("f.csv"), "--k", "2", "--algorithm", "spectral"});
  REQUIRE(spectral.code == cli::kExitOk);
  std::istringstream in(spectral.out);
  CHECK(adjusted_rand(read_labels(in), a) == 1.0);
}

TEST_CASE("identical invocations give identical bytes") {
  Scratch s("determinism");
  const auto [x, truth] = gen_two_density(20, 20, 0.2, 1.0, 4.0, 9);
  {
    std::ofstream out(s.path("data.csv"));
    save_csv(out, x, &truth);
  }
  s.write("config.json", R"({"input": "data.csv", "methods": ["base", "single:level", "ward:raw"],
    "clusterers": ["kmeans", "spectral"], "restarts": 4, "ensemble": true,
    "outputs": {"scores": "scores.csv", "labels": "labels.csv", "metadata": "meta.json"}})");
  REQUIRE(run({"experiment", "--config", s.path("config.json")}).code == cli::kExitOk);
  const std::string first = read_file(s.path("scores.csv")) + read_file(s.path("labels.csv")) +
                            read_file(s.path("meta.json"));
  REQUIRE(run({"--threads", "3", "experiment", "--config", s.path("config.json")}).code == cli::kExitOk);
  const std::string second = read_file(s.path("scores.csv")) + read_file(s.path("labels.csv")) +
                             read_file(s.path("meta.json"));
  CHECK(first == second);
  CHECK(nlohmann::json::parse(read_file(s.path("meta.json")))["spec_version"] == 1);
}

TEST_CASE("usage and data errors map to exit codes") {
  Scratch s("errors");
  s.write("bad.csv", "1,2\n3\n");
  CHECK(run({}).code == cli::kExitUsage);
  CHECK(run({"frobnicate"}).code == cli::kExitUsage);
  CHECK(run({"eval", "--a", "x"}).code == cli::kExitUsage);
  CHECK(run({"eval", "--a", "x", "--b", "y", "--criterion", "ward"}).code == cli::kExitUsage);
  CHECK(run({"features", "--input", "x", "--criterion", "centroid"}).code == cli::kExitUsage);
  CHECK(run({"cluster", "--input", "x", "--k", "0"}).code == cli::kExitUsage);
  CHECK(run({"--help"}).code == cli::kExitOk);

  const Run bad = run({"features", "--input", s.path("bad.csv")});
  CHECK(bad.code == cli::kExitData);
  CHECK(bad.err.find("line 2") != std::string::npos);
  CHECK(run({"features", "--input", s.path("missing.csv")}).code == cli::kExitData);
  s.write("asym.csv", "0,1\n2,0\n");
  CHECK(run({"check", "--input", s.path("asym.csv")}).code == cli::kExitData);
  s.write("f.csv", "0\n1\n");
  CHECK(run({"cluster", "--input", s.path("f.csv"), "--k", "3"}).code == cli::kExitData);
}

TEST_SUITE_END();
