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

#ifndef DENDROFEAT_PIPELINE_HPP_
#define DENDROFEAT_PIPELINE_HPP_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "dendrofeat/core.hpp"
#include "dendrofeat/dataset.hpp"
#include "dendrofeat/dendro_distance.hpp"
#include "dendrofeat/embedding.hpp"
#include "dendrofeat/eval.hpp"
#include "dendrofeat/linkage.hpp"

namespace dendrofeat {

struct FeatureStage {
  LinkageCriterion criterion = LinkageCriterion::Single;
  LevelSelector level = LevelSelector::RawLinkage;

  bool operator==(const FeatureStage&) const = default;
};

/// A feature extractor: raw vectors when `stages` is empty ("base"),
/// otherwise a chain of dendrogram stages applied left to right.
struct FeatureMethod {
  std::vector<FeatureStage> stages;

  bool is_base() const { return stages.empty(); }
  std::string name() const;  // "base", "ward:raw", "ward:raw>single:level"
  static FeatureMethod parse(const std::string& text);

  bool operator==(const FeatureMethod&) const = default;
};

/// Dendrogram -> dendrogram distance -> embedding, starting from distances.
template <typename Scalar>
BasicEmbedding<Scalar> extract_features(const BasicDistanceMatrix<Scalar>& dist,
                                        LinkageCriterion criterion, LevelSelector level,
                                        std::optional<Index> dims = std::nullopt) {
  const auto dendro = build_dendrogram(dist, criterion);
  return embed(dendrogram_distance(dendro, level), dims);
}

template <typename Scalar>
BasicEmbedding<Scalar> extract_features(const BasicDataMatrix<Scalar>& data,
                                        LinkageCriterion criterion, LevelSelector level,
                                        std::optional<Index> dims = std::nullopt) {
  return extract_features(pairwise_sq_euclidean(data), criterion, level, dims);
}

/// Each stage consumes the squared Euclidean distances between the previous
/// stage's features, which reproduce that stage's dendrogram distance. Only
/// the final stage honours `dims`; inner stages keep the automatic dimension.
template <typename Scalar>
BasicEmbedding<Scalar> chain_features(const BasicDataMatrix<Scalar>& data,
                                      const std::vector<FeatureStage>& stages,
                                      std::optional<Index> dims = std::nullopt) {
  if (stages.empty()) throw ValidationError("feature chain needs at least one stage");
  BasicEmbedding<Scalar> current;
  for (std::size_t s = 0; s < stages.size(); ++s) {
    const bool last = s + 1 == stages.size();
    const auto& input = s == 0 ? data : current.coords;
    current = extract_features(pairwise_sq_euclidean(input), stages[s].criterion,
                               stages[s].level, last ? dims : std::nullopt);
  }
  return current;
}

enum class Clusterer { KMeans, Spectral };

std::string to_string(Clusterer c);
Clusterer parse_clusterer(const std::string& s);

struct PipelineConfig {
  std::filesystem::path input;
  bool has_labels = true;
  bool standardize = false;
  std::vector<FeatureMethod> methods;
  std::vector<FeatureStage> chain;  // appended as one more method when set
  std::vector<Clusterer> clusterers;
  int k = 2;
  int restarts = 100;
  std::uint64_t seed = 42;
  bool ensemble = false;
  bool score = true;
  std::optional<Index> dims;
  int threads = 1;

  // Outputs; empty paths are skipped.
  std::filesystem::path scores_csv;
  std::filesystem::path labels_csv;
  std::filesystem::path features_dir;
  std::filesystem::path metadata_json;

  // Methods actually run: `methods` followed by the chain, if any.
  std::vector<FeatureMethod> all_methods() const;
  void validate() const;

  static PipelineConfig from_json_text(const std::string& text,
                                       const std::filesystem::path& base_dir = {});
  static PipelineConfig load(const std::filesystem::path& path);
};

struct ScoreRow {
  std::string method;  // FeatureMethod::name() or "ensemble"
  Clusterer clusterer = Clusterer::KMeans;
  std::optional<Scores> scores;
};

struct MethodFeatures {
  FeatureMethod method;
  FeatureMatrix features;
  Vector<double> eigenvalues;  // empty for base
  Index negative_eigenvalues = 0;
};

struct ExperimentResult {
  std::vector<ScoreRow> rows;
  std::vector<Labeling> labels;  // parallel to rows
  std::vector<MethodFeatures> features;
};

/// Every (method, clusterer) cell, then one ensemble row per clusterer when
/// enabled, scored against `truth` when scoring is requested.
ExperimentResult run_experiment(const PipelineConfig& cfg, const DataMatrix& data,
                                const std::optional<Labeling>& truth);

/// Loads cfg.input and runs the experiment.
ExperimentResult run_experiment(const PipelineConfig& cfg);

std::string scores_csv(const std::vector<ScoreRow>& rows);
std::string labels_csv(const ExperimentResult& result);
std::string metadata_json(const PipelineConfig& cfg, const ExperimentResult& result);

/// Runs the experiment and writes every configured output file.
ExperimentResult run_and_write(const PipelineConfig& cfg);

}  // namespace dendrofeat

#endif  // DENDROFEAT_PIPELINE_HPP_
