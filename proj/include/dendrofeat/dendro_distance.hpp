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

#ifndef DENDROFEAT_DENDRO_DISTANCE_HPP_
#define DENDROFEAT_DENDRO_DISTANCE_HPP_

#include <algorithm>
#include <limits>
#include <optional>
#include <string_view>
#include <vector>

#include "dendrofeat/core.hpp"
#include "dendrofeat/linkage.hpp"

namespace dendrofeat {

/// Node function a dendrogram distance is read from: the merge height itself
/// (Minimax for single linkage) or the discrete level.
enum class LevelSelector { RawLinkage, DiscreteLevel };

constexpr std::string_view to_string(LevelSelector f) {
  return f == LevelSelector::RawLinkage ? "raw" : "level";
}

inline std::optional<LevelSelector> parse_level(std::string_view s) {
  if (s == "raw") return LevelSelector::RawLinkage;
  if (s == "level") return LevelSelector::DiscreteLevel;
  return std::nullopt;
}

/// D(i, j) = f(lowest common node of i and j) for any node function f that is
/// zero on leaves and non-decreasing towards the root. Each merge assigns
/// f(v) to the pairs it joins, so the cost is O(n^2) overall.
template <typename Scalar, typename LevelFn>
BasicDistanceMatrix<Scalar> dendrogram_distance(
    const BasicDendrogram<Scalar>& dendro, LevelFn&& f) {
  const Index n = dendro.leaf_count();
  Matrix<Scalar> out = Matrix<Scalar>::Zero(n, n);
  std::vector<std::vector<Index>> members(static_cast<std::size_t>(dendro.node_count()));
  for (Index i = 0; i < n; ++i) members[static_cast<std::size_t>(i)] = {i};
  for (Index t = 0; t + 1 < n; ++t) {
    const Index v = n + t;
    const auto& m = dendro.merges()[static_cast<std::size_t>(t)];
    auto& left = members[static_cast<std::size_t>(m.left)];
    auto& right = members[static_cast<std::size_t>(m.right)];
    const Scalar value = static_cast<Scalar>(f(v));
    for (Index x : left) {
      for (Index y : right) {
        out(x, y) = value;
        out(y, x) = value;
      }
    }
    auto& joined = members[static_cast<std::size_t>(v)];
    joined = std::move(left);
    joined.insert(joined.end(), right.begin(), right.end());
    right.clear();
    right.shrink_to_fit();
  }
  return BasicDistanceMatrix<Scalar>::trusted(std::move(out));
}

template <typename Scalar>
BasicDistanceMatrix<Scalar> dendrogram_distance(const BasicDendrogram<Scalar>& dendro,
                                                LevelSelector selector) {
  if (selector == LevelSelector::RawLinkage) {
    return dendrogram_distance(dendro, [&](Index v) { return dendro.linkage(v); });
  }
  return dendrogram_distance(
      dendro, [&](Index v) { return static_cast<Scalar>(dendro.level(v)); });
}

/// Minimax distances by the bottleneck variant of Floyd-Warshall, O(n^3).
template <typename Scalar>
BasicDistanceMatrix<Scalar> minimax_floyd_warshall(const BasicDistanceMatrix<Scalar>& dist) {
  Matrix<Scalar> m = dist.values();
  const Index n = m.rows();
  for (Index k = 0; k < n; ++k) {
    for (Index j = 0; j < n; ++j) {
      const Scalar dkj = m(k, j);
      for (Index i = 0; i < n; ++i) {
        const Scalar via = std::max(m(i, k), dkj);
        if (via < m(i, j)) m(i, j) = via;
      }
    }
  }
  return BasicDistanceMatrix<Scalar>::trusted(std::move(m));
}

/// Minimax distances as the largest edge on the minimum spanning tree path.
/// Dense Prim, then one traversal of the tree per source; O(n^2) total.
template <typename Scalar>
BasicDistanceMatrix<Scalar> minimax_mst(const BasicDistanceMatrix<Scalar>& dist) {
  const Index n = dist.size();
  Matrix<Scalar> out = Matrix<Scalar>::Zero(n, n);
  if (n <= 1) return BasicDistanceMatrix<Scalar>::trusted(std::move(out));

  std::vector<std::vector<std::pair<Index, Scalar>>> tree(static_cast<std::size_t>(n));
  std::vector<char> in_tree(static_cast<std::size_t>(n), 0);
  std::vector<Scalar> best(static_cast<std::size_t>(n), std::numeric_limits<Scalar>::infinity());
  std::vector<Index> from(static_cast<std::size_t>(n), -1);
  best[0] = Scalar(0);
  for (Index step = 0; step < n; ++step) {
    Index u = -1;
    for (Index v = 0; v < n; ++v) {
      if (!in_tree[static_cast<std::size_t>(v)] &&
          (u < 0 || best[static_cast<std::size_t>(v)] < best[static_cast<std::size_t>(u)])) {
        u = v;
      }
    }
    in_tree[static_cast<std::size_t>(u)] = 1;
    if (const Index p = from[static_cast<std::size_t>(u)]; p >= 0) {
      tree[static_cast<std::size_t>(u)].emplace_back(p, dist(u, p));
      tree[static_cast<std::size_t>(p)].emplace_back(u, dist(u, p));
    }
    for (Index v = 0; v < n; ++v) {
      if (!in_tree[static_cast<std::size_t>(v)] && dist(u, v) < best[static_cast<std::size_t>(v)]) {
        best[static_cast<std::size_t>(v)] = dist(u, v);
        from[static_cast<std::size_t>(v)] = u;
      }
    }
  }

  std::vector<Index> stack;
  std::vector<Index> via(static_cast<std::size_t>(n));
  for (Index s = 0; s < n; ++s) {
    stack.assign(1, s);
    via[static_cast<std::size_t>(s)] = -1;
    while (!stack.empty()) {
      const Index u = stack.back();
      stack.pop_back();
      for (auto [v, w] : tree[static_cast<std::size_t>(u)]) {
        if (v == via[static_cast<std::size_t>(u)]) continue;
        via[static_cast<std::size_t>(v)] = u;
        out(s, v) = std::max(out(s, u), w);
        stack.push_back(v);
      }
    }
  }
  return BasicDistanceMatrix<Scalar>::trusted(std::move(out));
}

struct UltrametricWitness {
  Index i;
  Index j;
  Index k;  // D(i, j) > max(D(i, k), D(k, j))
};

template <typename Scalar>
struct BasicUltrametricReport {
  bool is_ultrametric = true;
  Scalar worst_violation = Scalar(0);
  std::optional<UltrametricWitness> witness;
};

using UltrametricReport = BasicUltrametricReport<double>;

/// Scans all triples of distinct objects for D(i,j) <= max(D(i,k), D(k,j)).
/// worst_violation is the largest D(i,j) - max(D(i,k), D(k,j)), floored at 0.
template <typename Scalar>
BasicUltrametricReport<Scalar> check_ultrametric(const BasicDistanceMatrix<Scalar>& dist,
                                                 Scalar tol) {
  BasicUltrametricReport<Scalar> report;
  const Index n = dist.size();
  const auto& m = dist.values();
  UltrametricWitness worst{0, 0, 0};
  for (Index i = 0; i < n; ++i) {
    for (Index j = i + 1; j < n; ++j) {
      const Scalar dij = m(i, j);
      for (Index k = 0; k < n; ++k) {
        if (k == i || k == j) continue;
        const Scalar excess = dij - std::max(m(i, k), m(k, j));
        if (excess > report.worst_violation) {
          report.worst_violation = excess;
          worst = {i, j, k};
        }
      }
    }
  }
  report.is_ultrametric = report.worst_violation <= tol;
  if (!report.is_ultrametric) report.witness = worst;
  return report;
}

}  // namespace dendrofeat

#endif  // DENDROFEAT_DENDRO_DISTANCE_HPP_
