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

#include "cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include "dendrofeat/dendrofeat.hpp"
#include "dendrofeat/serialize.hpp"

namespace dendrofeat::cli {
namespace {

constexpr std::uint64_t kDefaultSeed = 42;

void emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
  } else {
    write_text_file(path, text);
  }
}

std::optional<Index> parse_dims(const std::string& dims) {
  if (dims == "auto") return std::nullopt;
  try {
    std::size_t used = 0;
    const long v = std::stol(dims, &used);
    if (used == dims.size() && v >= 0) return static_cast<Index>(v);
  } catch (const std::exception&) {
  }
  throw CLI::ValidationError("--dims", "expected 'auto' or a nonnegative integer");
}

std::string matrix_text(const Matrix<double>& m) {
  std::ostringstream s;
  write_matrix_csv(s, m);
  return s.str();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Dendrogram-based feature extraction and consensus clustering"};
  app.name(args.empty() ? "dendrofeat" : args.front());
  app.require_subcommand(1, 1);
  app.fallthrough();

  int threads = 1;
  app.add_option("--threads", threads, "Worker threads for restarts")->check(CLI::PositiveNumber);

  // features
  std::string f_input, f_output, f_distances, f_dendrogram, f_spectrum;
  std::string f_criterion = "single", f_level = "raw", f_dims = "auto";
  bool f_labels = false, f_standardize = false;
  auto* features = app.add_subcommand("features", "Embed a dendrogram distance of CSV vectors");
  features->add_option("--input", f_input, "CSV of vectors")->required();
  features->add_flag("--has-labels", f_labels, "Last column holds class labels");
  features->add_flag("--standardize", f_standardize, "z-score columns first");
  features->add_option("--criterion", f_criterion, "single|complete|average|ward")
      ->check(CLI::IsMember({"single", "complete", "average", "ward"}));
  features->add_option("--level", f_level, "raw|level")->check(CLI::IsMember({"raw", "level"}));
  features->add_option("--dims", f_dims, "Embedding dimension or 'auto'");
  features->add_option("--output", f_output, "Features CSV (default stdout)");
  features->add_option("--distances", f_distances, "Also write the dendrogram distance CSV");
  features->add_option("--dendrogram", f_dendrogram, "Also write the merge list JSON");
  features->add_option("--spectrum", f_spectrum, "Also write eigenvalues JSON");

  // cluster
  std::string c_input, c_output, c_algorithm = "kmeans", c_diagnostics;
  int c_k = 0, c_restarts = 100;
  std::uint64_t c_seed = kDefaultSeed;
  auto* cluster = app.add_subcommand("cluster", "Cluster a features CSV");
  cluster->add_option("--input", c_input, "Features CSV")->required();
  cluster->add_option("--algorithm", c_algorithm, "kmeans|spectral")
      ->check(CLI::IsMember({"kmeans", "spectral"}));
  cluster->add_option("--k", c_k, "Number of clusters")->required()->check(CLI::PositiveNumber);
  cluster->add_option("--restarts", c_restarts, "Restarts")->check(CLI::PositiveNumber);
  cluster->add_option("--seed", c_seed, "Random seed");
  cluster->add_option("--output", c_output, "Labels file (default stdout)");
  cluster->add_option("--diagnostics", c_diagnostics, "Write inertia diagnostics JSON");

  // ensemble
  std::vector<std::string> e_labels;
  std::string e_output, e_coassoc, e_trace;
  int e_k = 0, e_restarts = 100;
  std::uint64_t e_seed = kDefaultSeed;
  auto* ensemble = app.add_subcommand("ensemble", "Consensus of several labelings");
  ensemble->add_option("--labels", e_labels, "Labels file (repeat)")->required();
  ensemble->add_option("--k", e_k, "Clusters (default: largest input K)")->check(CLI::PositiveNumber);
  ensemble->add_option("--restarts", e_restarts, "Restarts")->check(CLI::PositiveNumber);
  ensemble->add_option("--seed", e_seed, "Random seed");
  ensemble->add_option("--output", e_output, "Consensus labels (default stdout)");
  ensemble->add_option("--coassoc", e_coassoc, "Also write the co-association CSV");
  ensemble->add_option("--trace", e_trace, "Also write the search trace JSON");

  // eval
  std::string v_a, v_b, v_format = "json";
  auto* eval = app.add_subcommand("eval", "Compare two labelings");
  eval->add_option("--a", v_a, "Reference labels")->required();
  eval->add_option("--b", v_b, "Predicted labels")->required();
  eval->add_option("--format", v_format, "json|csv")->check(CLI::IsMember({"json", "csv"}));

  // experiment
  std::string x_config;
  auto* experiment = app.add_subcommand("experiment", "Run a configured experiment");
  experiment->add_option("--config", x_config, "Config JSON")->required();

  // check
  std::string k_input;
  std::optional<double> k_tol;
  auto* check = app.add_subcommand("check", "Test a distance CSV for the ultrametric inequality");
  check->add_option("--input", k_input, "Distance CSV")->required();
  check->add_option("--tol", k_tol, "Absolute tolerance (default 1e-9 x max entry)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  if (!reversed.empty()) reversed.pop_back();
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (features->parsed()) {
      std::optional<Index> dims;
      try {
        dims = parse_dims(f_dims);
      } catch (const CLI::ValidationError& e) {
        err << e.what() << '\n';
        return kExitUsage;
      }
      Dataset ds = load_csv(f_input, f_labels);
      const DataMatrix data = f_standardize ? standardize(ds.data) : ds.data;
      const auto dendro = build_dendrogram(pairwise_sq_euclidean(data), *parse_criterion(f_criterion));
      const auto dist = dendrogram_distance(dendro, *parse_level(f_level));
      const auto emb = embed(dist, dims);
      emit(f_output, matrix_text(emb.coords), out);
      if (!f_distances.empty()) emit(f_distances, matrix_text(dist.values()), out);
      if (!f_dendrogram.empty()) emit(f_dendrogram, dendrogram_to_json(dendro).dump(2) + "\n", out);
      if (!f_spectrum.empty()) {
        auto j = spectrum_to_json(emb.spectrum);
        j["dims"] = emb.coords.cols();
        j["negative_eigenvalues"] = emb.negative_eigenvalues;
        emit(f_spectrum, j.dump(2) + "\n", out);
      }
    } else if (cluster->parsed()) {
      err << "cluster: seed=" << c_seed << '\n';
      const Matrix<double> points = read_matrix_csv(c_input);
      std::ostringstream labels;
      if (c_algorithm == "kmeans") {
        KMeansOptions opt;
        opt.restarts = c_restarts;
        opt.seed = c_seed;
        opt.threads = threads;
        const auto r = kmeans(points, c_k, opt);
        write_labels(labels, r.labels);
        if (!c_diagnostics.empty()) {
          const nlohmann::json j = {{"seed", c_seed}, {"inertia", r.inertia},
                                    {"best_restart", r.best_restart}, {"trace", r.trace}};
          emit(c_diagnostics, j.dump(2) + "\n", out);
        }
      } else {
        SpectralOptions opt;
        opt.restarts = c_restarts;
        opt.seed = c_seed;
        opt.threads = threads;
        write_labels(labels, spectral_clustering(
                                 distance_to_similarity(pairwise_sq_euclidean(points)), c_k, opt));
      }
      emit(c_output, labels.str(), out);
    } else if (ensemble->parsed()) {
      err << "ensemble: seed=" << e_seed << '\n';
      std::vector<Labeling> solutions;
      int k = e_k;
      for (const auto& path : e_labels) {
        solutions.push_back(read_labels(path));
        if (e_k == 0) k = std::max(k, solutions.back().k());
      }
      const CoAssociation s = co_association(solutions);
      LocalSearchOptions opt;
      opt.restarts = e_restarts;
      opt.seed = e_seed;
      opt.threads = threads;
      const auto r = cc_local_search(s, k, opt);
      std::ostringstream labels;
      write_labels(labels, r.labels);
      emit(e_output, labels.str(), out);
      if (!e_coassoc.empty()) emit(e_coassoc, matrix_text(s.values().cast<double>()), out);
      if (!e_trace.empty()) {
        const nlohmann::json j = {{"seed", e_seed}, {"cost", r.cost},
                                  {"best_restart", r.best_restart}, {"trace", r.trace}};
        emit(e_trace, j.dump(2) + "\n", out);
      }
    } else if (eval->parsed()) {
      const Scores s = score(read_labels(v_a), read_labels(v_b));
      if (v_format == "json") {
        auto j = scores_to_json(s);
        j["ami_normalization"] = "arithmetic_mean";
        out << j.dump(2) << '\n';
      } else {
        out << "MI,Rand,VM\n"
            << format_double(s.mi) << ',' << format_double(s.rand) << ',' << format_double(s.vm)
            << '\n';
      }
    } else if (experiment->parsed()) {
      PipelineConfig cfg = PipelineConfig::load(x_config);
      if (threads > 1) cfg.threads = threads;
      err << "experiment: seed=" << cfg.seed << '\n';
      const auto result = run_and_write(cfg);
      if (cfg.scores_csv.empty()) out << scores_csv(result.rows);
    } else if (check->parsed()) {
      const DistanceMatrix d(read_matrix_csv(k_input));
      const double tol = k_tol ? *k_tol : 1e-9 * (d.size() > 0 ? d.values().maxCoeff() : 0.0);
      auto j = report_to_json(check_ultrametric(d, tol));
      j["tolerance"] = tol;
      out << j.dump(2) << '\n';
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitData;
  }
  return kExitOk;
}

}  // namespace dendrofeat::cli
