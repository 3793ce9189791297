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

#include "dendrofeat/pipeline.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "dendrofeat/cluster.hpp"
#include "dendrofeat/ensemble.hpp"
#include "dendrofeat/io.hpp"
#include "dendrofeat/serialize.hpp"

namespace dendrofeat {

std::string FeatureMethod::name() const {
  if (stages.empty()) return "base";
  std::string out;
  for (const auto& s : stages) {
    if (!out.empty()) out += '>';
    out += std::string(to_string(s.criterion)) + ':' + std::string(to_string(s.level));
  }
  return out;
}

FeatureMethod FeatureMethod::parse(const std::string& text) {
  FeatureMethod m;
  if (text == "base") return m;
  std::stringstream in(text);
  std::string part;
  while (std::getline(in, part, '>')) {
    const auto colon = part.find(':');
    const auto crit = parse_criterion(part.substr(0, colon));
    const auto level = colon == std::string::npos ? std::optional(LevelSelector::RawLinkage)
                                                  : parse_level(part.substr(colon + 1));
    if (!crit || !level) throw ValidationError("unknown feature method '" + text + "'");
    m.stages.push_back({*crit, *level});
  }
  if (m.stages.empty()) throw ValidationError("empty feature method");
  return m;
}

std::string to_string(Clusterer c) { return c == Clusterer::KMeans ? "kmeans" : "spectral"; }

Clusterer parse_clusterer(const std::string& s) {
  if (s == "kmeans") return Clusterer::KMeans;
  if (s == "spectral") return Clusterer::Spectral;
  throw ValidationError("unknown clusterer '" + s + "'");
}

std::vector<FeatureMethod> PipelineConfig::all_methods() const {
  std::vector<FeatureMethod> out = methods;
  if (!chain.empty()) out.push_back(FeatureMethod{chain});
  return out;
}

void PipelineConfig::validate() const {
  if (methods.empty() && chain.empty()) throw ValidationError("no feature methods configured");
  if (clusterers.empty()) throw ValidationError("no clusterers configured");
  if (k < 1) throw ValidationError("k must be >= 1");
  if (restarts < 1) throw ValidationError("restarts must be >= 1");
  if (threads < 1) throw ValidationError("threads must be >= 1");
  std::set<std::string> seen;
  for (const auto& m : all_methods()) {
    if (!seen.insert(m.name()).second) {
      throw ValidationError("feature method '" + m.name() + "' listed twice");
    }
  }
}

PipelineConfig PipelineConfig::from_json_text(const std::string& text,
                                              const std::filesystem::path& base_dir) {
  static const std::set<std::string> known = {
      "input", "has_labels", "standardize", "methods", "chain", "clusterers", "k", "restarts",
      "seed", "ensemble", "score", "dims", "threads", "outputs"};
  PipelineConfig cfg;
  auto resolve = [&](const std::string& p) -> std::filesystem::path {
    std::filesystem::path path(p);
    return path.is_relative() && !base_dir.empty() ? base_dir / path : path;
  };
  try {
    const auto j = nlohmann::json::parse(text);
    if (!j.is_object()) throw ValidationError("config must be a JSON object");
    for (const auto& [key, value] : j.items()) {
      if (!known.contains(key)) throw ValidationError("unknown config key '" + key + "'");
    }
    if (j.contains("input")) cfg.input = resolve(j["input"].get<std::string>());
    cfg.has_labels = j.value("has_labels", cfg.has_labels);
    cfg.standardize = j.value("standardize", cfg.standardize);
    for (const auto& m : j.value("methods", std::vector<std::string>{})) {
      cfg.methods.push_back(FeatureMethod::parse(m));
    }
    for (const auto& s : j.value("chain", std::vector<std::string>{})) {
      const auto stage = FeatureMethod::parse(s);
      cfg.chain.insert(cfg.chain.end(), stage.stages.begin(), stage.stages.end());
    }
    for (const auto& c : j.value("clusterers", std::vector<std::string>{})) {
      cfg.clusterers.push_back(parse_clusterer(c));
    }
    cfg.k = j.value("k", cfg.k);
    cfg.restarts = j.value("restarts", cfg.restarts);
    cfg.seed = j.value("seed", cfg.seed);
    cfg.ensemble = j.value("ensemble", cfg.ensemble);
    cfg.score = j.value("score", cfg.score);
    cfg.threads = j.value("threads", cfg.threads);
    if (j.contains("dims") && !(j["dims"].is_string() && j["dims"] == "auto")) {
      cfg.dims = j["dims"].get<Index>();
    }
    if (j.contains("outputs")) {
      const auto& o = j["outputs"];
      if (o.contains("scores")) cfg.scores_csv = resolve(o["scores"].get<std::string>());
      if (o.contains("labels")) cfg.labels_csv = resolve(o["labels"].get<std::string>());
      if (o.contains("features_dir")) cfg.features_dir = resolve(o["features_dir"].get<std::string>());
      if (o.contains("metadata")) cfg.metadata_json = resolve(o["metadata"].get<std::string>());
    }
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("invalid config: ") + e.what());
  }
  cfg.validate();
  return cfg;
}

PipelineConfig PipelineConfig::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  std::stringstream text;
  text << in.rdbuf();
  return from_json_text(text.str(), path.parent_path());
}

ExperimentResult run_experiment(const PipelineConfig& cfg, const DataMatrix& raw,
                                const std::optional<Labeling>& truth) {
  cfg.validate();
  if (cfg.score && !truth) throw ValidationError("scoring requested but no ground truth given");
  if (truth && truth->size() != raw.rows()) {
    throw ValidationError("ground truth length does not match the data");
  }
  const DataMatrix data = cfg.standardize ? standardize(raw) : raw;

  ExperimentResult result;
  for (const auto& method : cfg.all_methods()) {
    MethodFeatures mf{method, {}, {}, 0};
    if (method.is_base()) {
      mf.features = data;
    } else {
      auto emb = chain_features(data, method.stages, cfg.dims);
      mf.features = std::move(emb.coords);
      mf.eigenvalues = std::move(emb.spectrum.eigenvalues);
      mf.negative_eigenvalues = emb.negative_eigenvalues;
    }
    result.features.push_back(std::move(mf));
  }

  auto add_row = [&](std::string method, Clusterer c, Labeling labels) {
    ScoreRow row{std::move(method), c, std::nullopt};
    if (cfg.score) row.scores = score(*truth, labels);
    result.rows.push_back(std::move(row));
    result.labels.push_back(std::move(labels));
  };

  for (const auto& mf : result.features) {
    for (Clusterer c : cfg.clusterers) {
      if (c == Clusterer::KMeans) {
        KMeansOptions opt;
        opt.restarts = cfg.restarts;
        opt.seed = cfg.seed;
        opt.threads = cfg.threads;
        add_row(mf.method.name(), c, kmeans(mf.features, cfg.k, opt).labels);
      } else {
        SpectralOptions opt;
        opt.restarts = cfg.restarts;
        opt.seed = cfg.seed;
        opt.threads = cfg.threads;
        const auto sim = distance_to_similarity(pairwise_sq_euclidean(mf.features));
        add_row(mf.method.name(), c, spectral_clustering(sim, cfg.k, opt));
      }
    }
  }

  if (cfg.ensemble) {
    const std::size_t cells = result.labels.size();
    for (Clusterer c : cfg.clusterers) {
      std::vector<Labeling> members;
      for (std::size_t r = 0; r < cells; ++r) {
        if (result.rows[r].clusterer == c) members.push_back(result.labels[r]);
      }
      LocalSearchOptions opt;
      opt.restarts = cfg.restarts;
      opt.seed = cfg.seed;
      opt.threads = cfg.threads;
      add_row("ensemble", c, cc_local_search(co_association(members), cfg.k, opt).labels);
    }
  }
  return result;
}

ExperimentResult run_experiment(const PipelineConfig& cfg) {
  if (cfg.input.empty()) throw ValidationError("config has no input file");
  const Dataset ds = load_csv(cfg.input, cfg.has_labels);
  return run_experiment(cfg, ds.data, ds.labels);
}

std::string scores_csv(const std::vector<ScoreRow>& rows) {
  std::ostringstream out;
  out << "method,clusterer,MI,Rand,VM\n";
  for (const auto& r : rows) {
    out << r.method << ',' << to_string(r.clusterer);
    if (r.scores) {
      out << ',' << format_double(r.scores->mi) << ',' << format_double(r.scores->rand) << ','
          << format_double(r.scores->vm);
    } else {
      out << ",,,";
    }
    out << '\n';
  }
  return out.str();
}

std::string labels_csv(const ExperimentResult& result) {
  std::ostringstream out;
  for (std::size_t r = 0; r < result.rows.size(); ++r) {
    if (r > 0) out << ',';
    out << result.rows[r].method << '/' << to_string(result.rows[r].clusterer);
  }
  out << '\n';
  const Index n = result.labels.empty() ? 0 : result.labels.front().size();
  for (Index i = 0; i < n; ++i) {
    for (std::size_t r = 0; r < result.labels.size(); ++r) {
      if (r > 0) out << ',';
      out << result.labels[r][i];
    }
    out << '\n';
  }
  return out.str();
}

std::string metadata_json(const PipelineConfig& cfg, const ExperimentResult& result) {
  nlohmann::json methods = nlohmann::json::array();
  for (const auto& mf : result.features) {
    methods.push_back({{"method", mf.method.name()},
                       {"dims", mf.features.cols()},
                       {"negative_eigenvalues", mf.negative_eigenvalues}});
  }
  nlohmann::json clusterers = nlohmann::json::array();
  for (auto c : cfg.clusterers) clusterers.push_back(to_string(c));
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : result.rows) {
    nlohmann::json row = {{"method", r.method}, {"clusterer", to_string(r.clusterer)}};
    if (r.scores) row["scores"] = scores_to_json(*r.scores);
    rows.push_back(std::move(row));
  }
  const nlohmann::json meta = {
      {"spec_version", kSchemaVersion},
      {"tool", "dendrofeat"},
      {"version", "0.1.0"},
      {"input", cfg.input.generic_string()},
      {"seed", cfg.seed},
      {"k", cfg.k},
      {"restarts", cfg.restarts},
      {"standardize", cfg.standardize},
      {"dims", cfg.dims ? nlohmann::json(*cfg.dims) : nlohmann::json("auto")},
      {"ensemble", cfg.ensemble},
      {"clusterers", clusterers},
      {"features", methods},
      {"rows", rows},
      {"decisions",
       {{"ami_normalization", "arithmetic_mean"},
        {"spectral_similarity", "max(X)-X+min(X) over feature-space squared Euclidean distances"},
        {"spectral_laplacian", "symmetric normalized, unit-length rows"},
        {"ensemble_members", "configured feature methods, per clusterer"},
        {"kmeans_seeding", "k-means++"}}}};
  return meta.dump(2) + "\n";
}

namespace {

std::string file_stem(const std::string& method) {
  std::string s = method;
  for (char& ch : s) {
    if (ch == ':') ch = '_';
    if (ch == '>') ch = '-';
  }
  return s;
}

}  // namespace

ExperimentResult run_and_write(const PipelineConfig& cfg) {
  ExperimentResult result = run_experiment(cfg);
  if (!cfg.scores_csv.empty()) write_text_file(cfg.scores_csv, scores_csv(result.rows));
  if (!cfg.labels_csv.empty()) write_text_file(cfg.labels_csv, labels_csv(result));
  if (!cfg.features_dir.empty()) {
    std::filesystem::create_directories(cfg.features_dir);
    for (const auto& mf : result.features) {
      std::ostringstream out;
      write_matrix_csv(out, mf.features);
      write_text_file(cfg.features_dir / (file_stem(mf.method.name()) + ".csv"), out.str());
    }
  }
  if (!cfg.metadata_json.empty()) write_text_file(cfg.metadata_json, metadata_json(cfg, result));
  return result;
}

}  // namespace dendrofeat
