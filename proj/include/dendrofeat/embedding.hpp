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

#ifndef DENDROFEAT_EMBEDDING_HPP_
#define DENDROFEAT_EMBEDDING_HPP_

#include <Eigen/Jacobi>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "dendrofeat/core.hpp"

namespace dendrofeat {

class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double residual)
      : Error(what), residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_;
};

/// Eigenpairs of a symmetric matrix, eigenvalues descending. Each
/// eigenvector's entry of largest magnitude is positive.
template <typename Scalar>
struct BasicSpectrum {
  Vector<Scalar> eigenvalues;
  Matrix<Scalar> eigenvectors;
  int sweeps = 0;
};

using Spectrum = BasicSpectrum<double>;

struct JacobiOptions {
  double symmetry_tol = 1e-10;     // relative to max(1, max |m_ij|)
  double relative_off_tol = 1e-12; // stop once off(A) < tol * off(A_0)
  int max_sweeps = 100;
};

namespace detail {

template <typename Scalar>
Scalar off_diagonal_norm(const Matrix<Scalar>& a) {
  Scalar sum = 0;
  for (Index j = 0; j < a.cols(); ++j) {
    for (Index i = 0; i < a.rows(); ++i) {
      if (i != j) sum += a(i, j) * a(i, j);
    }
  }
  return std::sqrt(sum);
}

}  // namespace detail

/// Cyclic Jacobi: sweeps over all (p, q) pairs in row order, annihilating
/// a(p, q) with a plane rotation, until the off-diagonal Frobenius norm has
/// dropped below relative_off_tol of its initial value (or to rounding level).
template <typename Scalar>
BasicSpectrum<Scalar> sym_eig(const Matrix<Scalar>& m, const JacobiOptions& opt = {}) {
  if (m.rows() != m.cols()) throw ValidationError("sym_eig needs a square matrix");
  require_finite(m, "sym_eig input");
  const Index n = m.rows();
  const Scalar scale = std::max<Scalar>(Scalar(1), n > 0 ? m.cwiseAbs().maxCoeff() : Scalar(0));
  if (n > 0 && (m - m.transpose()).cwiseAbs().maxCoeff() > opt.symmetry_tol * scale) {
    throw ValidationError("sym_eig input is not symmetric");
  }

  Matrix<Scalar> a = (m + m.transpose()) / Scalar(2);
  Matrix<Scalar> v = Matrix<Scalar>::Identity(n, n);
  const Scalar off0 = detail::off_diagonal_norm(a);
  const Scalar floor = Scalar(4) * std::numeric_limits<Scalar>::epsilon() * a.norm();
  const Scalar target = std::max(static_cast<Scalar>(opt.relative_off_tol) * off0, floor);

  BasicSpectrum<Scalar> out;
  Scalar off = off0;
  while (off > target) {
    if (out.sweeps == opt.max_sweeps) {
      throw ConvergenceError("Jacobi eigensolver did not converge after " +
                                 std::to_string(opt.max_sweeps) + " sweeps",
                             static_cast<double>(off));
    }
    ++out.sweeps;
    for (Index p = 0; p < n; ++p) {
      for (Index q = p + 1; q < n; ++q) {
        if (a(p, q) == Scalar(0)) continue;
        Eigen::JacobiRotation<Scalar> rot;
        rot.makeJacobi(a, p, q);
        a.applyOnTheRight(p, q, rot);
        a.applyOnTheLeft(p, q, rot.adjoint());
        v.applyOnTheRight(p, q, rot);
        a(p, q) = Scalar(0);
        a(q, p) = Scalar(0);
      }
    }
    off = detail::off_diagonal_norm(a);
  }

  std::vector<Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Index x, Index y) { return a(x, x) > a(y, y); });
  out.eigenvalues.resize(n);
  out.eigenvectors.resize(n, n);
  for (Index c = 0; c < n; ++c) {
    const Index src = order[static_cast<std::size_t>(c)];
    out.eigenvalues(c) = a(src, src);
    auto col = out.eigenvectors.col(c);
    col = v.col(src);
    Index pivot = 0;
    for (Index r = 1; r < n; ++r) {
      if (std::abs(col(r)) > std::abs(col(pivot))) pivot = r;
    }
    if (col(pivot) < Scalar(0)) col = -col;
  }
  return out;
}

/// W = -1/2 A D A with A = I - (1/n) e e^T. Row and column sums of W vanish.
template <typename Scalar>
Matrix<Scalar> center_distance_matrix(const BasicDistanceMatrix<Scalar>& dist) {
  const Index n = dist.size();
  if (n == 0) return Matrix<Scalar>();
  const auto& d = dist.values();
  // d is symmetric, so row and column means coincide.
  const Vector<Scalar> mean = d.colwise().mean().transpose();
  const Scalar total_mean = mean.mean();
  Matrix<Scalar> w(n, n);
  for (Index j = 0; j < n; ++j) {
    for (Index i = j; i < n; ++i) {
      w(i, j) = Scalar(-0.5) * (d(i, j) - mean(i) - mean(j) + total_mean);
      w(j, i) = w(i, j);
    }
  }
  return w;
}

template <typename Scalar>
struct BasicEmbedding {
  BasicFeatureMatrix<Scalar> coords;  // n x l
  BasicSpectrum<Scalar> spectrum;     // of the centered matrix
  // Eigenvalues below -1e-9 * max|lambda|; ultrametric inputs have none.
  Index negative_eigenvalues = 0;
};

using Embedding = BasicEmbedding<double>;

inline constexpr double kAutoDimensionThreshold = 1e-9;

/// Coordinates whose pairwise squared Euclidean distances reproduce `dist`
/// (exactly, up to rounding, when dist is ultrametric). With dims unset the
/// dimension keeps eigenvalues above 1e-9 * lambda_1; a fixed dims keeps the
/// top eigenpairs and clips negative eigenvalues to zero.
template <typename Scalar>
BasicEmbedding<Scalar> embed(const BasicDistanceMatrix<Scalar>& dist,
                             std::optional<Index> dims = std::nullopt,
                             const JacobiOptions& opt = {}) {
  const Index n = dist.size();
  if (dims && (*dims < 0 || *dims > n)) {
    throw ValidationError("embedding dimension " + std::to_string(*dims) +
                          " exceeds object count " + std::to_string(n));
  }
  BasicEmbedding<Scalar> out;
  out.spectrum = sym_eig(center_distance_matrix(dist), opt);
  const auto& lambda = out.spectrum.eigenvalues;
  if (n == 0) return out;

  const Scalar lead = lambda(0);
  const Scalar magnitude = lambda.cwiseAbs().maxCoeff();
  for (Index c = 0; c < n; ++c) {
    if (lambda(c) < -static_cast<Scalar>(kAutoDimensionThreshold) * magnitude) {
      ++out.negative_eigenvalues;
    }
  }
  Index l = 0;
  if (dims) {
    l = *dims;
  } else if (lead > Scalar(0)) {
    while (l < n && lambda(l) > static_cast<Scalar>(kAutoDimensionThreshold) * lead) ++l;
  }
  out.coords.resize(n, l);
  for (Index c = 0; c < l; ++c) {
    const Scalar root = std::sqrt(std::max(lambda(c), Scalar(0)));
    out.coords.col(c) = out.spectrum.eigenvectors.col(c) * root;
  }
  return out;
}

}  // namespace dendrofeat

#endif  // DENDROFEAT_EMBEDDING_HPP_
