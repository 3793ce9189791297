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

#ifndef DENDROFEAT_DATASET_HPP_
#define DENDROFEAT_DATASET_HPP_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <utility>

#include "dendrofeat/core.hpp"

namespace dendrofeat {

struct Dataset {
  DataMatrix data;
  std::optional<Labeling> labels;
};

/// Reads comma-separated numeric rows. Blank lines and lines starting with
/// '#' are skipped; a first line containing a non-numeric field is treated as
/// a header. With `has_labels` the final column holds class labels (any
/// token), re-encoded to 1..K by first occurrence.
Dataset load_csv(const std::filesystem::path& path, bool has_labels);
Dataset parse_csv(std::istream& in, bool has_labels);

/// Writes rows with 17 significant digits, optionally followed by the label.
void save_csv(std::ostream& out, const DataMatrix& data,
              const Labeling* labels = nullptr);

/// values(i, j) = sum_k (Y_ik - Y_jk)^2.
template <typename Derived>
BasicDistanceMatrix<typename Derived::Scalar> pairwise_sq_euclidean(
    const Eigen::MatrixBase<Derived>& data) {
  using Scalar = typename Derived::Scalar;
  require_finite(data, "data matrix");
  const Index n = data.rows();
  Matrix<Scalar> d = Matrix<Scalar>::Zero(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = i + 1; j < n; ++j) {
      const Scalar v = (data.row(i) - data.row(j)).squaredNorm();
      d(i, j) = v;
      d(j, i) = v;
    }
  }
  return BasicDistanceMatrix<Scalar>::trusted(std::move(d));
}

/// Column-wise z-scores (population standard deviation). Constant columns are
/// only centered.
DataMatrix standardize(const DataMatrix& data);

/// Two isotropic 2-D Gaussian blobs: n1 points with standard deviation
/// `spread1` around the origin and n2 points with `spread2` around
/// (separation, 0). Labels are 1 for the first blob and 2 for the second.
std::pair<DataMatrix, Labeling> gen_two_density(Index n1, Index n2,
                                                double spread1, double spread2,
                                                double separation,
                                                std::uint64_t seed);

}  // namespace dendrofeat

#endif  // DENDROFEAT_DATASET_HPP_
