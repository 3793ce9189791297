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

#include "dendrofeat/cluster.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "dendrofeat/embedding.hpp"
#include "dendrofeat/parallel.hpp"
#include "dendrofeat/random.hpp"

namespace dendrofeat {

SimilarityMatrix::SimilarityMatrix(Matrix<double> values) : values_(std::move(values)) {
  if (values_.rows() != values_.cols()) {
    throw ValidationError("similarity matrix must be square");
  }
  require_finite(values_, "similarity matrix");
  if (values_.size() > 0 && values_.minCoeff() < 0.0) {
    throw ValidationError("similarity matrix has negative entries");
  }
  if (values_ != values_.transpose()) {
    throw ValidationError("similarity matrix is not symmetric");
  }
}

SimilarityMatrix distance_to_similarity(const DistanceMatrix& dist) {
  const Index n = dist.size();
  if (n < 2) throw ValidationError("similarity transform needs at least 2 objects");
  double hi = -std::numeric_limits<double>::infinity();
  double lo = std::numeric_limits<double>::infinity();
  for (Index j = 0; j < n; ++j) {
    for (Index i = 0; i < n; ++i) {
      if (i == j) continue;
      hi = std::max(hi, dist(i, j));
      lo = std::min(lo, dist(i, j));
    }
  }
  Matrix<double> s(n, n);
  for (Index j = 0; j < n; ++j) {
    for (Index i = 0; i < n; ++i) s(i, j) = hi - dist(i, j) + lo;
  }
  return SimilarityMatrix(std::move(s));
}

namespace {

struct Run {
  std::vector<int> assign;
  double inertia = std::numeric_limits<double>::infinity();
  std::vector<double> trace;
};

// Greedy D^2-weighted seeding.
Matrix<double> seed_centers(const Matrix<double>& x, int k, Rng& rng) {
  const Index n = x.rows();
  Matrix<double> centers(k, x.cols());
  centers.row(0) = x.row(static_cast<Index>(rng.below(static_cast<std::uint64_t>(n))));
  Vector<double> d2(n);
  for (Index i = 0; i < n; ++i) d2(i) = (x.row(i) - centers.row(0)).squaredNorm();
  for (int c = 1; c < k; ++c) {
    const double total = d2.sum();
    Index pick = 0;
    if (total > 0.0) {
      const double target = rng.uniform() * total;
      double acc = 0.0;
      pick = n - 1;
      for (Index i = 0; i < n; ++i) {
        acc += d2(i);
        if (acc > target && d2(i) > 0.0) {
          pick = i;
          break;
        }
      }
    } else {
      pick = static_cast<Index>(rng.below(static_cast<std::uint64_t>(n)));
    }
    centers.row(c) = x.row(pick);
    for (Index i = 0; i < n; ++i) {
      d2(i) = std::min(d2(i), (x.row(i) - centers.row(c)).squaredNorm());
    }
  }
  return centers;
}

double recenter(const Matrix<double>& x, const std::vector<int>& assign, int k,
                Matrix<double>& centers, std::vector<Index>& counts) {
  Matrix<double> sums = Matrix<double>::Zero(k, x.cols());
  counts.assign(static_cast<std::size_t>(k), 0);
  for (Index i = 0; i < x.rows(); ++i) {
    const int c = assign[static_cast<std::size_t>(i)];
    sums.row(c) += x.row(i);
    ++counts[static_cast<std::size_t>(c)];
  }
  for (int c = 0; c < k; ++c) {
    if (counts[static_cast<std::size_t>(c)] > 0) {
      centers.row(c) = sums.row(c) / static_cast<double>(counts[static_cast<std::size_t>(c)]);
    }
  }
  double inertia = 0.0;
  for (Index i = 0; i < x.rows(); ++i) {
    inertia += (x.row(i) - centers.row(assign[static_cast<std::size_t>(i)])).squaredNorm();
  }
  return inertia;
}

Run lloyd(const Matrix<double>& x, int k, int max_iter, Rng& rng) {
  const Index n = x.rows();
  Matrix<double> centers = seed_centers(x, k, rng);
  Run run;
  run.assign.assign(static_cast<std::size_t>(n), -1);
  std::vector<Index> counts;
  for (int iter = 0; iter < max_iter; ++iter) {
    bool changed = false;
    for (Index i = 0; i < n; ++i) {
      int best = 0;
      double best_d = (x.row(i) - centers.row(0)).squaredNorm();
      for (int c = 1; c < k; ++c) {
        const double d = (x.row(i) - centers.row(c)).squaredNorm();
        if (d < best_d) {
          best_d = d;
          best = c;
        }
      }
      if (run.assign[static_cast<std::size_t>(i)] != best) {
        run.assign[static_cast<std::size_t>(i)] = best;
        changed = true;
      }
    }
    run.inertia = recenter(x, run.assign, k, centers, counts);
    // Empty clusters take the currently worst-fitted point.
    for (int c = 0; c < k; ++c) {
      if (counts[static_cast<std::size_t>(c)] > 0) continue;
      Index far = -1;
      double far_d = -1.0;
      for (Index i = 0; i < n; ++i) {
        const int own = run.assign[static_cast<std::size_t>(i)];
        if (counts[static_cast<std::size_t>(own)] < 2) continue;
        const double d = (x.row(i) - centers.row(own)).squaredNorm();
        if (d > far_d) {
          far_d = d;
          far = i;
        }
      }
      if (far < 0) break;
      run.assign[static_cast<std::size_t>(far)] = c;
      run.inertia = recenter(x, run.assign, k, centers, counts);
      changed = true;
    }
    run.trace.push_back(run.inertia);
    if (!changed) break;
  }
  return run;
}

}  // namespace

KMeansResult kmeans(const Matrix<double>& points, int k, const KMeansOptions& opt) {
  const Index n = points.rows();
  if (k < 1) throw ValidationError("k-means needs k >= 1");
  if (k > n) {
    throw ValidationError("k-means with k=" + std::to_string(k) + " on " +
                          std::to_string(n) + " points");
  }
  if (opt.restarts < 1) throw ValidationError("k-means needs at least one restart");
  require_finite(points, "k-means input");

  std::vector<Run> runs(static_cast<std::size_t>(opt.restarts));
  parallel_for(opt.restarts, opt.threads, [&](int r) {
    Rng rng(opt.seed, static_cast<std::uint64_t>(r));
    runs[static_cast<std::size_t>(r)] = lloyd(points, k, opt.max_iter, rng);
  });
  int best = 0;
  for (int r = 1; r < opt.restarts; ++r) {
    if (runs[static_cast<std::size_t>(r)].inertia < runs[static_cast<std::size_t>(best)].inertia) {
      best = r;
    }
  }
  Run& winner = runs[static_cast<std::size_t>(best)];
  std::vector<int> labels(winner.assign.size());
  std::transform(winner.assign.begin(), winner.assign.end(), labels.begin(),
                 [](int c) { return c + 1; });
  return {Labeling(std::move(labels), k), winner.inertia, best, std::move(winner.trace)};
}

Labeling spectral_clustering(const SimilarityMatrix& sim, int k, const SpectralOptions& opt) {
  const Index n = sim.size();
  if (k < 1 || k > n) {
    throw ValidationError("spectral clustering with k=" + std::to_string(k) +
                          " on " + std::to_string(n) + " objects");
  }
  const Vector<double> degree = sim.values().rowwise().sum();
  Vector<double> inv_sqrt(n);
  for (Index i = 0; i < n; ++i) {
    if (!(degree(i) > 0.0)) {
      throw ValidationError("vertex " + std::to_string(i) + " has zero degree");
    }
    inv_sqrt(i) = 1.0 / std::sqrt(degree(i));
  }
  Matrix<double> lap = -(inv_sqrt.asDiagonal() * sim.values() * inv_sqrt.asDiagonal());
  lap.diagonal().array() += 1.0;
  lap = (lap + lap.transpose()) / 2.0;

  const Spectrum eig = sym_eig(lap);
  Matrix<double> rows = eig.eigenvectors.rightCols(k);
  for (Index i = 0; i < n; ++i) {
    const double norm = rows.row(i).norm();
    if (norm > 0.0) rows.row(i) /= norm;
  }
  KMeansOptions km;
  km.restarts = opt.restarts;
  km.seed = opt.seed;
  km.threads = opt.threads;
  return kmeans(rows, k, km).labels;
}

}  // namespace dendrofeat
