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

#ifndef DENDROFEAT_CORE_HPP_
#define DENDROFEAT_CORE_HPP_

#include <Eigen/Dense>

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace dendrofeat {

using Index = Eigen::Index;

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

// Row i is object i.
template <typename Scalar>
using BasicDataMatrix = Matrix<Scalar>;
using DataMatrix = BasicDataMatrix<double>;

// Embedded coordinates, one row per object, columns by descending eigenvalue.
template <typename Scalar>
using BasicFeatureMatrix = Matrix<Scalar>;
using FeatureMatrix = BasicFeatureMatrix<double>;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input violates a documented precondition or type invariant.
class ValidationError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

template <typename Derived>
void require_finite(const Eigen::MatrixBase<Derived>& m, const char* what) {
  if (!m.allFinite()) {
    throw ValidationError(std::string(what) + " contains non-finite values");
  }
}

/// Pairwise distances: symmetric, zero diagonal, nonnegative and finite.
/// The invariants are checked once on construction and never again.
template <typename Scalar>
class BasicDistanceMatrix {
 public:
  using scalar_type = Scalar;

  BasicDistanceMatrix() = default;

  explicit BasicDistanceMatrix(Matrix<Scalar> values)
      : values_(std::move(values)) {
    validate();
  }

  // For producers whose output satisfies the invariants by construction.
  static BasicDistanceMatrix trusted(Matrix<Scalar> values) {
    BasicDistanceMatrix d;
    d.values_ = std::move(values);
    return d;
  }

  Index size() const { return values_.rows(); }
  Scalar operator()(Index i, Index j) const { return values_(i, j); }
  const Matrix<Scalar>& values() const { return values_; }

  bool operator==(const BasicDistanceMatrix& other) const {
    return values_.rows() == other.values_.rows() &&
           values_.cols() == other.values_.cols() && values_ == other.values_;
  }

 private:
  void validate() const {
    if (values_.rows() != values_.cols()) {
      throw ValidationError("distance matrix must be square");
    }
    require_finite(values_, "distance matrix");
    const Index n = values_.rows();
    for (Index j = 0; j < n; ++j) {
      if (values_(j, j) != Scalar(0)) {
        throw ValidationError("distance matrix diagonal must be zero (row " +
                              std::to_string(j) + ")");
      }
      for (Index i = 0; i < n; ++i) {
        if (values_(i, j) < Scalar(0)) {
          throw ValidationError("distance matrix entry (" + std::to_string(i) +
                                "," + std::to_string(j) + ") is negative");
        }
        if (values_(i, j) != values_(j, i)) {
          throw ValidationError("distance matrix is not symmetric at (" +
                                std::to_string(i) + "," + std::to_string(j) +
                                ")");
        }
      }
    }
  }

  Matrix<Scalar> values_;
};

using DistanceMatrix = BasicDistanceMatrix<double>;

/// Cluster assignment of n objects with labels in 1..k. Clusters may be
/// empty; k is the size of the label alphabet.
class Labeling {
 public:
  Labeling() = default;
  Labeling(std::vector<int> labels, int k);

  // Re-encodes arbitrary integer labels to 1..K by order of first occurrence.
  static Labeling encode(std::span<const int> raw);

  Index size() const { return static_cast<Index>(labels_.size()); }
  int k() const { return k_; }
  int operator[](Index i) const { return labels_[static_cast<std::size_t>(i)]; }
  const std::vector<int>& labels() const { return labels_; }

  // Number of distinct labels actually used.
  int used_clusters() const;

  bool operator==(const Labeling&) const = default;

 private:
  std::vector<int> labels_;
  int k_ = 0;
};

}  // namespace dendrofeat

#endif  // DENDROFEAT_CORE_HPP_
