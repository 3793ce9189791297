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

#include "doctest.h"
#include "json.hpp"
#include "dendrofeat/dataset.hpp"
#include "dendrofeat/io.hpp"
#include "dendrofeat/pipeline.hpp"
#include "oracles.hpp"

using namespace dendrofeat;

namespace {

double max_relative_error(const Matrix<double>& got, const Matrix<double>& want) {
  return (got - want).cwiseAbs().maxCoeff() / std::max(1e-300, want.cwiseAbs().maxCoeff());
}

// Connected components of the graph with edges d(i, j) <= h, as labels.
std::vector<int> components(const Matrix<double>& d, double h) {
  const Index n = d.rows();
  std::vector<int> label(static_cast<std::size_t>(n), 0);
  int next = 0;
  for (Index s = 0; s < n; ++s) {
    if (label[static_cast<std::size_t>(s)]) continue;
    label[static_cast<std::size_t>(s)] = ++next;
    std::vector<Index> stack{s};
    while (!stack.empty()) {
      const Index u = stack.back();
      stack.pop_back();
      for (Index v = 0; v < n; ++v) {
        if (!label[static_cast<std::size_t>(v)] && d(u, v) <= h) {
          label[static_cast<std::size_t>(v)] = next;
          stack.push_back(v);
        }
      }
    }
  }
  return label;
}

std::filesystem::path scratch_dir(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / ("dendrofeat_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace

TEST_SUITE_BEGIN("pipeline");

TEST_CASE("features of the three-point line reproduce raw single linkage distances") {
  DataMatrix x(3, 1);
  x << 0, 1, 3;
  const Embedding e = extract_features(x, LinkageCriterion::Single, LevelSelector::RawLinkage);
  Matrix<double> expect(3, 3);
  expect << 0, 1, 4, 1, 0, 4, 4, 4, 0;
  CHECK(max_relative_error(pairwise_sq_euclidean(e.coords).values(), expect) <= 1e-9);
}

TEST_CASE("a single object has no features") {
  const DataMatrix x = DataMatrix::Constant(1, 2, 3.0);
  const Embedding e = extract_features(x, LinkageCriterion::Ward, LevelSelector::DiscreteLevel);
  CHECK(e.coords.rows() == 1);
  CHECK(e.coords.cols() == 0);
}

TEST_CASE("a one-stage chain equals extract_features") {
  Rng rng(1);
  const DataMatrix x = oracle::random_data(25, 3, rng);
  for (auto c : kAllCriteria) {
    const Embedding a = chain_features(x, {{c, LevelSelector::DiscreteLevel}});
    const Embedding b = extract_features(x, c, LevelSelector::DiscreteLevel);
    CHECK(a.coords == b.coords);
  }
  CHECK_THROWS_AS(chain_features(x, {}), ValidationError);
}

TEST_CASE("ward then single chain yields ultrametric feature distances") {
  Rng rng(2);
  const DataMatrix x = oracle::random_data(40, 2, rng);
  const Embedding e = chain_features(
      x, {{LinkageCriterion::Ward, LevelSelector::RawLinkage}, {LinkageCriterion::Single, LevelSelector::RawLinkage}});
  CHECK(e.coords.rows() == 40);
  CHECK(e.coords.allFinite());
  const auto d = pairwise_sq_euclidean(e.coords);
  CHECK(check_ultrametric(d, 1e-9 * d.values().maxCoeff()).is_ultrametric);
}

TEST_CASE("a second single stage keeps the partition at every height") {
  Rng rng(3);
  for (int trial = 0; trial < 5; ++trial) {
    const DataMatrix x = oracle::random_data(30, 2, rng);
    const auto first = dendrogram_distance(build_dendrogram(pairwise_sq_euclidean(x), LinkageCriterion::Single),
                                           LevelSelector::RawLinkage);
    const Embedding e = chain_features(
        x, {{LinkageCriterion::Single, LevelSelector::RawLinkage}, {LinkageCriterion::Single, LevelSelector::RawLinkage}});
    const Matrix<double> second = pairwise_sq_euclidean(e.coords).values();
    CHECK(max_relative_error(second, first.values()) <= 1e-6);
    const double slack = 1e-7 * first.values().maxCoeff();
    const Dendrogram regrown = build_dendrogram(first, LinkageCriterion::Single);
    for (const auto& m : regrown.merges()) {
      CHECK(oracle::same_partition(components(first.values(), m.height),
                                   components(second, m.height + slack)));
    }
  }
}

TEST_CASE("feature method names parse and print") {
  CHECK(FeatureMethod::parse("base").is_base());
  const FeatureMethod m = FeatureMethod::parse("ward:raw>single:level");
  REQUIRE(m.stages.size() == 2);
  CHECK(m.stages[0] == FeatureStage{LinkageCriterion::Ward, LevelSelector::RawLinkage});
  CHECK(m.stages[1] == FeatureStage{LinkageCriterion::Single, LevelSelector::DiscreteLevel});
  CHECK(m.name() == "ward:raw>single:level");
  CHECK(FeatureMethod::parse("average").name() == "average:raw");
  CHECK_THROWS_AS(FeatureMethod::parse("median:raw"), ValidationError);
  CHECK_THROWS_AS(FeatureMethod::parse("single:height"), ValidationError);
  CHECK(parse_clusterer("spectral") == Clusterer::Spectral);
  CHECK_THROWS_AS(parse_clusterer("gmm"), ValidationError);
}

TEST_CASE("config parsing and validation") {
  const PipelineConfig cfg = PipelineConfig::from_json_text(R"({
    "input": "data.csv", "methods": ["base", "single:level"], "chain": ["ward:raw", "single:raw"],
    "clusterers": ["kmeans", "spectral"], "k": 3, "restarts": 7, "seed": 5, "ensemble": true,
    "dims": 4, "outputs": {"scores": "out/scores.csv"}})",
                                                            "/work");
  CHECK(cfg.input == std::filesystem::path("/work/data.csv"));
  CHECK(cfg.scores_csv == std::filesystem::path("/work/out/scores.csv"));
  CHECK(cfg.k == 3);
  CHECK(cfg.restarts == 7);
  CHECK(cfg.seed == 5);
  CHECK(cfg.ensemble);
  CHECK(cfg.dims == Index{4});
  REQUIRE(cfg.all_methods().size() == 3);
  CHECK(cfg.all_methods()[2].name() == "ward:raw>single:raw");

  CHECK_FALSE(PipelineConfig::from_json_text(R"({"methods":["base"],"clusterers":["kmeans"],"dims":"auto"})").dims);
  CHECK_THROWS_AS(PipelineConfig::from_json_text(R"({"methods":["base"],"clusterers":[]})"), ValidationError);
  CHECK_THROWS_AS(PipelineConfig::from_json_text(R"({"methods":[],"clusterers":["kmeans"]})"), ValidationError);
  CHECK_THROWS_AS(PipelineConfig::from_json_text(R"({"methods":["base"],"clusterers":["kmeans"],"k":0})"), ValidationError);
  CHECK_THROWS_AS(PipelineConfig::from_json_text(R"({"methods":["base"],"clusterers":["kmeans"],"colour":1})"), ValidationError);
  CHECK_THROWS_AS(PipelineConfig::from_json_text(R"({"methods":["base","base"],"clusterers":["kmeans"]})"), ValidationError);
  CHECK_THROWS_AS(PipelineConfig::from_json_text("[1,2]"), ValidationError);
  CHECK_THROWS_AS(PipelineConfig::from_json_text("{"), ValidationError);
}

TEST_CASE("experiment rows cover every method and clusterer") {
  const auto [x, truth] = gen_two_density(30, 30, 0.1, 0.5, 10.0, 4);
  PipelineConfig cfg;
  cfg.methods = {FeatureMethod::parse("base"), FeatureMethod::parse("single:raw"),
                 FeatureMethod::parse("ward:level")};
  cfg.clusterers = {Clusterer::KMeans, Clusterer::Spectral};
  cfg.restarts = 5;
  cfg.ensemble = true;
  const ExperimentResult r = run_experiment(cfg, x, truth);
  REQUIRE(r.rows.size() == 3 * 2 + 2);
  CHECK(r.labels.size() == r.rows.size());
  CHECK(r.features.size() == 3);
  CHECK(r.rows[6].method == "ensemble");
  CHECK(r.rows[7].clusterer == Clusterer::Spectral);
  // Well separated blobs: every method agrees, so the ensemble does too.
  for (const auto& row : r.rows) {
    REQUIRE(row.scores);
    CHECK(row.scores->rand == 1.0);
  }
  const std::string csv = scores_csv(r.rows);
  CHECK(csv.rfind("method,clusterer,MI,Rand,VM\nbase,kmeans,1,1,1\n", 0) == 0);
}

TEST_CASE("experiment preconditions") {
  const auto [x, truth] = gen_two_density(5, 5, 0.1, 0.1, 10.0, 4);
  PipelineConfig cfg;
  cfg.methods = {FeatureMethod::parse("base")};
  cfg.clusterers = {Clusterer::KMeans};
  CHECK_THROWS_AS(run_experiment(cfg, x, std::nullopt), ValidationError);
  cfg.score = false;
  const ExperimentResult r = run_experiment(cfg, x, std::nullopt);
  CHECK_FALSE(r.rows[0].scores.has_value());
  cfg.clusterers.clear();
  CHECK_THROWS_AS(run_experiment(cfg, x, truth), ValidationError);
}

TEST_CASE("level features beat minimax features on mixed densities") {
  const auto [x, truth] = gen_two_density(120, 120, 0.25, 6.0, 2.0, 1);
  PipelineConfig cfg;
  cfg.methods = {FeatureMethod::parse("single:raw"), FeatureMethod::parse("single:level")};
  cfg.clusterers = {Clusterer::KMeans};
  cfg.restarts = 20;
  const ExperimentResult r = run_experiment(cfg, x, truth);
  CHECK(r.rows[1].scores->rand >= r.rows[0].scores->rand);
}

TEST_CASE("run_and_write produces every configured output") {
  const auto dir = scratch_dir("pipeline");
  const auto [x, truth] = gen_two_density(15, 15, 0.1, 0.5, 10.0, 2);
  {
    std::ofstream out(dir / "data.csv");
    save_csv(out, x, &truth);
  }
  std::ofstream(dir / "config.json") << R"({
    "input": "data.csv", "methods": ["base", "complete:level"], "clusterers": ["kmeans"],
    "restarts": 3, "ensemble": true,
    "outputs": {"scores": "scores.csv", "labels": "labels.csv", "features_dir": "features",
                "metadata": "meta.json"}})";
  const PipelineConfig cfg = PipelineConfig::load(dir / "config.json");
  const ExperimentResult r = run_and_write(cfg);
  CHECK(std::filesystem::exists(dir / "scores.csv"));
  CHECK(std::filesystem::exists(dir / "features" / "base.csv"));
  CHECK(read_matrix_csv(dir / "features" / "complete_level.csv").rows() == 30);
  std::ifstream labels(dir / "labels.csv");
  std::string header;
  std::getline(labels, header);
  CHECK(header == "base/kmeans,complete:level/kmeans,ensemble/kmeans");
  std::ifstream meta_in(dir / "meta.json");
  const auto meta = nlohmann::json::parse(meta_in);
  CHECK(meta["k"] == 2);
  CHECK(meta["rows"].size() == r.rows.size());
  CHECK(meta["decisions"]["ami_normalization"] == "arithmetic_mean");
  std::filesystem::remove_all(dir);
}

TEST_SUITE_END();
