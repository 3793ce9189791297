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

#ifndef DENDROFEAT_CLUSTER_HPP_
#define DENDROFEAT_CLUSTER_HPP_

#include <cstdint>
#include <vector>

#include "dendrofeat/core.hpp"

namespace dendrofeat {

/// Symmetric, nonnegative pairwise similarities.
class SimilarityMatrix {
 public:
  SimilarityMatrix() = default;
  explicit SimilarityMatrix(Matrix<double> values);

  Index size() const { return values_.rows(); }
  double operator()(Index i, Index j) const { return values_(i, j); }
  const Matrix<double>& values() const { return values_; }

 private:
  Matrix<double> values_;
};

/// S_ij = max(X) - X_ij + min(X), with max and min over off-diagonal entries.
/// The diagonal gets the same formula with X_ii = 0.
SimilarityMatrix distance_to_similarity(const DistanceMatrix& dist);

struct KMeansOptions {
  int restarts = 100;
  int max_iter = 300;
  std::uint64_t seed = 42;
  int threads = 1;
};

struct KMeansResult {
  Labeling labels;
  double inertia = 0.0;
  int best_restart = 0;
  // Within-cluster sum of squares after each Lloyd iteration of the best
  // restart.
  std::vector<double> trace;
};

/// Lloyd's algorithm from k-means++ seeding, best of `restarts` by inertia.
/// Restart r draws from its own stream derived from (seed, r). A cluster
/// that runs empty takes the point farthest from its current center.
KMeansResult kmeans(const Matrix<double>& points, int k, const KMeansOptions& opt = {});

struct SpectralOptions {
  int restarts = 100;
  std::uint64_t seed = 42;
  int threads = 1;
};

/// Normalized spectral clustering: bottom-k eigenvectors of
/// L = I - D^{-1/2} S D^{-1/2}, rows scaled to unit length, then k-means.
Labeling spectral_clustering(const SimilarityMatrix& sim, int k,
                             const SpectralOptions& opt = {});

}  // namespace dendrofeat

#endif  // DENDROFEAT_CLUSTER_HPP_
