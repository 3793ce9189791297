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

#include <algorithm>
#include <numeric>
#include <string>
#include <vector>

#include "doctest.h"
#include "dendrofeat/cluster.hpp"
#include "dendrofeat/dataset.hpp"
#include "dendrofeat/eval.hpp"
#include "oracles.hpp"

using namespace dendrofeat;

namespace {

// Three tight blobs far apart; every sensible restart finds the same split.
DataMatrix three_blobs(Rng& rng) {
  DataMatrix x(30, 2);
  const double centers[3][2] = {{0, 0}, {20, 0}, {0, 20}};
  for (Index i = 0; i < 30; ++i) {
    x(i, 0) = centers[i % 3][0] + 0.3 * rng.normal();
    x(i, 1) = centers[i % 3][1] + 0.3 * rng.normal();
  }
  return x;
}

}  // namespace

TEST_SUITE_BEGIN("cluster");

TEST_CASE("distance_to_similarity on hand values") {
  Matrix<double> x(3, 3);
  x << 0, 1, 4, 1, 0, 9, 4, 9, 0;
  const SimilarityMatrix s = distance_to_similarity(DistanceMatrix{x});
  Matrix<double> expect(3, 3);
  expect << 10, 9, 6, 9, 10, 1, 6, 1, 10;
  CHECK(s.values() == expect);

  Matrix<double> flat = Matrix<double>::Constant(4, 4, 2.5);
  flat.diagonal().setZero();
  const SimilarityMatrix fs = distance_to_similarity(DistanceMatrix{flat});
  for (Index i = 0; i < 4; ++i)
    for (Index j = 0; j < 4; ++j) CHECK(fs(i, j) == (i == j ? 5.0 : 2.5));

  CHECK_THROWS_AS(distance_to_similarity(DistanceMatrix{Matrix<double>::Zero(1, 1)}), ValidationError);
}

TEST_CASE("distance_to_similarity reverses the order of off-diagonal entries") {
  Rng rng(1);
  const auto d = pairwise_sq_euclidean(oracle::random_data(12, 2, rng));
  const SimilarityMatrix s = distance_to_similarity(d);
  for (Index i = 0; i < 12; ++i)
    for (Index j = 0; j < 12; ++j)
      for (Index p = 0; p < 12; ++p)
        for (Index q = 0; q < 12; ++q)
          if (i != j && p != q && d(i, j) < d(p, q)) CHECK(s(i, j) > s(p, q));
}

TEST_CASE("SimilarityMatrix rejects invalid input") {
  Matrix<double> m(2, 2);
  m << 1, 2, 3, 1;
  CHECK_THROWS_AS(SimilarityMatrix{m}, ValidationError);
  m << 1, -2, -2, 1;
  CHECK_THROWS_AS(SimilarityMatrix{m}, ValidationError);
}

TEST_CASE("kmeans separates two pairs on a line") {
  Matrix<double> x(4, 1);
  x << 0, 0.1, 10, 10.1;
  const KMeansResult r = kmeans(x, 2);
  CHECK(r.labels[0] == r.labels[1]);
  CHECK(r.labels[2] == r.labels[3]);
  CHECK(r.labels[0] != r.labels[2]);
  CHECK(r.inertia == doctest::Approx(0.01));
}

TEST_CASE("kmeans with k equal to n and k equal to one") {
  Rng rng(2);
  const DataMatrix x = oracle::random_data(9, 3, rng);
  const KMeansResult all = kmeans(x, 9);
  CHECK(all.inertia == 0.0);
  CHECK(all.labels.used_clusters() == 9);

  const KMeansResult one = kmeans(x, 1);
  const Eigen::RowVectorXd mean = x.colwise().mean();
  double expect = 0;
  for (Index i = 0; i < 9; ++i) expect += (x.row(i) - mean).squaredNorm();
  CHECK(one.inertia == doctest::Approx(expect).epsilon(1e-12));
  CHECK(one.labels.used_clusters() == 1);

  CHECK_THROWS_AS(kmeans(x, 10), ValidationError);
  CHECK_THROWS_AS(kmeans(x, 0), ValidationError);
}

TEST_CASE("kmeans inertia never increases across Lloyd iterations") {
  Rng rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const Index n = 5 + static_cast<Index>(rng.below(80));
    const DataMatrix x = oracle::random_data(n, 2, rng);
    KMeansOptions opt;
    opt.restarts = 5;
    opt.seed = static_cast<std::uint64_t>(trial);
    const KMeansResult r = kmeans(x, 1 + static_cast<int>(rng.below(5)), opt);
    REQUIRE_FALSE(r.trace.empty());
    for (std::size_t t = 1; t < r.trace.size(); ++t) CHECK(r.trace[t] <= r.trace[t - 1]);
    CHECK(r.trace.back() == doctest::Approx(r.inertia));
  }
}

TEST_CASE("kmeans is deterministic and independent of the thread count") {
  Rng rng(4);
  const DataMatrix x = oracle::random_data(60, 3, rng);
  KMeansOptions opt;
  opt.restarts = 12;
  opt.seed = 99;
  const KMeansResult a = kmeans(x, 4, opt);
  opt.threads = 4;
  const KMeansResult b = kmeans(x, 4, opt);
  CHECK(a.labels == b.labels);
  CHECK(a.inertia == b.inertia);
  CHECK(a.best_restart == b.best_restart);
}

TEST_CASE("kmeans labels survive a permutation of the rows") {
  Rng rng(5);
  const DataMatrix x = three_blobs(rng);
  std::vector<Index> perm(30);
  std::iota(perm.begin(), perm.end(), 0);
  std::reverse(perm.begin(), perm.end());
  std::swap(perm[3], perm[17]);
  DataMatrix y(30, 2);
  for (Index i = 0; i < 30; ++i) y.row(i) = x.row(perm[static_cast<std::size_t>(i)]);
  const Labeling a = kmeans(x, 3).labels;
  const Labeling b = kmeans(y, 3).labels;
  std::vector<int> back(30);
  for (Index i = 0; i < 30; ++i) back[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])] = b[i];
  CHECK(adjusted_rand(a, Labeling::encode(back)) == 1.0);
}

TEST_CASE("kmeans repairs clusters that run empty") {
  // Duplicated points make empty clusters likely for k close to n.
  Matrix<double> x(6, 1);
  x << 0, 0, 0, 5, 5, 9;
  KMeansOptions opt;
  opt.restarts = 20;
  const KMeansResult r = kmeans(x, 3, opt);
  CHECK(r.labels.used_clusters() == 3);
  CHECK(r.inertia == 0.0);
}

TEST_CASE("spectral clustering recovers disconnected blocks") {
  Matrix<double> s = Matrix<double>::Zero(6, 6);
  s.topLeftCorner(3, 3).setOnes();
  s.bottomRightCorner(3, 3).setOnes();
  const Labeling l = spectral_clustering(SimilarityMatrix{s}, 2);
  CHECK(l.labels() == std::vector<int>{l[0], l[0], l[0], l[3], l[3], l[3]});
  CHECK(l[0] != l[3]);

  CHECK(spectral_clustering(SimilarityMatrix{s}, 1).used_clusters() == 1);
}

TEST_CASE("spectral clustering finds k weighted components") {
  Rng rng(6);
  for (int trial = 0; trial < 5; ++trial) {
    const int k = 2 + trial % 3;
    const Index n = 20;
    std::vector<int> truth(static_cast<std::size_t>(n));
    for (Index i = 0; i < n; ++i) truth[static_cast<std::size_t>(i)] = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(k)));
    for (int c = 1; c <= k; ++c) truth[static_cast<std::size_t>(c - 1)] = c;  // no empty component
    Matrix<double> s = Matrix<double>::Zero(n, n);
    for (Index i = 0; i < n; ++i) {
      for (Index j = 0; j <= i; ++j) {
        if (truth[static_cast<std::size_t>(i)] == truth[static_cast<std::size_t>(j)]) {
          s(i, j) = s(j, i) = 0.5 + rng.uniform();
        }
      }
    }
    SpectralOptions opt;
    opt.seed = static_cast<std::uint64_t>(trial);
    const Labeling l = spectral_clustering(SimilarityMatrix{s}, k, opt);
    CHECK(oracle::same_partition(l.labels(), truth));
  }
}

TEST_CASE("spectral clustering names an isolated vertex") {
  Matrix<double> s = Matrix<double>::Ones(4, 4);
  s.row(2).setZero();
  s.col(2).setZero();
  try {
    spectral_clustering(SimilarityMatrix{s}, 2);
    FAIL("expected an error");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("vertex 2") != std::string::npos);
  }
  CHECK_THROWS_AS(spectral_clustering(SimilarityMatrix{Matrix<double>::Ones(2, 2)}, 3), ValidationError);
}

TEST_SUITE_END();
