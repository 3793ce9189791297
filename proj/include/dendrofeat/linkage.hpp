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

#ifndef DENDROFEAT_LINKAGE_HPP_
#define DENDROFEAT_LINKAGE_HPP_

#include <algorithm>
#include <optional>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "dendrofeat/core.hpp"

namespace dendrofeat {

enum class LinkageCriterion { Single, Complete, Average, Ward };

inline constexpr LinkageCriterion kAllCriteria[] = {
    LinkageCriterion::Single, LinkageCriterion::Complete,
    LinkageCriterion::Average, LinkageCriterion::Ward};

constexpr std::string_view to_string(LinkageCriterion c) {
  switch (c) {
    case LinkageCriterion::Single: return "single";
    case LinkageCriterion::Complete: return "complete";
    case LinkageCriterion::Average: return "average";
    case LinkageCriterion::Ward: return "ward";
  }
  return "?";
}

inline std::optional<LinkageCriterion> parse_criterion(std::string_view s) {
  for (auto c : kAllCriteria) {
    if (to_string(c) == s) return c;
  }
  return std::nullopt;
}

template <typename Scalar>
struct BasicMerge {
  Index left;
  Index right;
  Scalar height;
  Index size;

  bool operator==(const BasicMerge&) const = default;
};

/// Binary merge tree over leaves 0..n-1. Internal node n+t is created by
/// merges()[t]; the root is 2n-2. Leaves have linkage 0 and level 0.
///
/// Levels follow the tie-aware rule: a node is one level above its highest
/// child when its linkage strictly exceeds both child linkages, and at the
/// same level otherwise. Zero-distance duplicates therefore merge at level 0.
template <typename Scalar>
class BasicDendrogram {
 public:
  using Merge = BasicMerge<Scalar>;

  BasicDendrogram() = default;

  BasicDendrogram(Index n, std::vector<Merge> merges)
      : n_(n), merges_(std::move(merges)) {
    if (n_ < 1) throw ValidationError("dendrogram needs at least one leaf");
    if (static_cast<Index>(merges_.size()) != n_ - 1) {
      throw ValidationError("dendrogram over " + std::to_string(n_) +
                            " leaves needs " + std::to_string(n_ - 1) +
                            " merges");
    }
    const Index nodes = 2 * n_ - 1;
    parent_.assign(static_cast<std::size_t>(nodes), -1);
    levels_.assign(static_cast<std::size_t>(nodes), 0);
    for (Index t = 0; t < n_ - 1; ++t) {
      const Merge& m = merges_[static_cast<std::size_t>(t)];
      const Index v = n_ + t;
      for (Index c : {m.left, m.right}) {
        if (c < 0 || c >= v) {
          throw ValidationError("merge " + std::to_string(t) +
                                " references node " + std::to_string(c) +
                                " that does not exist yet");
        }
        if (parent_[static_cast<std::size_t>(c)] != -1) {
          throw ValidationError("node " + std::to_string(c) +
                                " is merged twice");
        }
        parent_[static_cast<std::size_t>(c)] = v;
      }
      if (m.left == m.right) throw ValidationError("node merged with itself");
      if (!std::isfinite(static_cast<double>(m.height))) {
        throw ValidationError("non-finite merge height");
      }
      const Scalar child_max = std::max(linkage(m.left), linkage(m.right));
      if (m.height < child_max) {
        throw ValidationError("merge " + std::to_string(t) +
                              " is lower than one of its children");
      }
      if (m.size != size(m.left) + size(m.right)) {
        throw ValidationError("merge " + std::to_string(t) +
                              " has inconsistent size");
      }
      const int top = std::max(level(m.left), level(m.right));
      levels_[static_cast<std::size_t>(v)] = m.height > child_max ? top + 1 : top;
    }
  }

  Index leaf_count() const { return n_; }
  Index node_count() const { return n_ == 0 ? 0 : 2 * n_ - 1; }
  Index root() const { return node_count() - 1; }
  bool is_leaf(Index v) const { return v < n_; }
  const std::vector<Merge>& merges() const { return merges_; }

  const Merge& merge_of(Index v) const {
    return merges_[static_cast<std::size_t>(v - n_)];
  }
  Scalar linkage(Index v) const { return is_leaf(v) ? Scalar(0) : merge_of(v).height; }
  int level(Index v) const { return levels_[static_cast<std::size_t>(v)]; }
  Index size(Index v) const { return is_leaf(v) ? 1 : merge_of(v).size; }
  Index parent(Index v) const { return parent_[static_cast<std::size_t>(v)]; }

  bool operator==(const BasicDendrogram& o) const {
    return n_ == o.n_ && merges_ == o.merges_;
  }

 private:
  Index n_ = 0;
  std::vector<Merge> merges_;
  std::vector<Index> parent_;
  std::vector<int> levels_;
};

using Dendrogram = BasicDendrogram<double>;
using Merge = BasicMerge<double>;

namespace detail {

// Lance-Williams update of d(k, a+b) for the supported criteria. Single and
// complete use min/max, which is the (1/2, 1/2, 0, -+1/2) formula without
// its rounding.
template <typename Scalar>
Scalar lance_williams(LinkageCriterion c, Scalar dka, Scalar dkb, Scalar dab,
                      Index na, Index nb, Index nk) {
  switch (c) {
    case LinkageCriterion::Single:
      return std::min(dka, dkb);
    case LinkageCriterion::Complete:
      return std::max(dka, dkb);
    case LinkageCriterion::Average: {
      const Scalar sa = static_cast<Scalar>(na), sb = static_cast<Scalar>(nb);
      return (sa * dka + sb * dkb) / (sa + sb);
    }
    case LinkageCriterion::Ward: {
      const Scalar sa = static_cast<Scalar>(na), sb = static_cast<Scalar>(nb),
                   sk = static_cast<Scalar>(nk);
      return ((sa + sk) * dka + (sb + sk) * dkb - sk * dab) / (sa + sb + sk);
    }
  }
  return dka;
}

}  // namespace detail

/// Agglomerative clustering by repeatedly merging the globally closest pair
/// of active clusters. Ties go to the pair with the smallest
/// (min node id, max node id). Each active cluster caches its nearest
/// neighbour, which is repaired only when it pointed at a merged cluster.
/// Ward expects squared Euclidean input.
template <typename Scalar>
BasicDendrogram<Scalar> build_dendrogram(const BasicDistanceMatrix<Scalar>& dist,
                                         LinkageCriterion criterion) {
  const Index n = dist.size();
  if (n == 0) throw ValidationError("cannot build a dendrogram over zero objects");

  Matrix<Scalar> d = dist.values();
  std::vector<Index> node(static_cast<std::size_t>(n));
  std::vector<Index> size(static_cast<std::size_t>(n), 1);
  std::vector<Scalar> height(static_cast<std::size_t>(n), Scalar(0));
  std::vector<char> active(static_cast<std::size_t>(n), 1);
  std::vector<Index> nn(static_cast<std::size_t>(n), -1);
  for (Index i = 0; i < n; ++i) node[static_cast<std::size_t>(i)] = i;

  auto at = [](auto& v, Index i) -> auto& { return v[static_cast<std::size_t>(i)]; };
  auto key = [&](Index a, Index b) {
    const Index x = at(node, a), y = at(node, b);
    return std::make_tuple(d(a, b), std::min(x, y), std::max(x, y));
  };
  auto rescan = [&](Index a) {
    Index best = -1;
    for (Index b = 0; b < n; ++b) {
      if (b == a || !at(active, b)) continue;
      if (best < 0 || key(a, b) < key(a, best)) best = b;
    }
    at(nn, a) = best;
  };
  for (Index a = 0; a < n; ++a) rescan(a);

  std::vector<BasicMerge<Scalar>> merges;
  merges.reserve(static_cast<std::size_t>(n - 1));
  for (Index step = 0; step < n - 1; ++step) {
    Index a = -1;
    for (Index i = 0; i < n; ++i) {
      if (!at(active, i)) continue;
      if (a < 0 || key(i, at(nn, i)) < key(a, at(nn, a))) a = i;
    }
    Index b = at(nn, a);
    if (b < a) std::swap(a, b);  // keep the lower slot

    const Scalar dab = d(a, b);
    const Index na = at(size, a), nb = at(size, b);
    // Rounding in the average/Ward updates can dip a hair below a child
    // height; heights are clamped so the tree stays monotone.
    const Scalar h = std::max({dab, at(height, a), at(height, b)});
    merges.push_back({std::min(at(node, a), at(node, b)),
                      std::max(at(node, a), at(node, b)), h, na + nb});

    for (Index k = 0; k < n; ++k) {
      if (!at(active, k) || k == a || k == b) continue;
      const Scalar v = detail::lance_williams(criterion, d(k, a), d(k, b), dab,
                                              na, nb, at(size, k));
      d(k, a) = v;
      d(a, k) = v;
    }
    at(active, b) = 0;
    at(node, a) = n + step;
    at(size, a) = na + nb;
    at(height, a) = h;

    rescan(a);
    for (Index k = 0; k < n; ++k) {
      if (!at(active, k) || k == a) continue;
      const Index cur = at(nn, k);
      if (cur == a || cur == b) {
        rescan(k);
      } else if (key(k, a) < key(k, cur)) {
        at(nn, k) = a;
      }
    }
  }
  return BasicDendrogram<Scalar>(n, std::move(merges));
}

/// The smallest node containing both leaves; leaf i itself when i == j.
template <typename Scalar>
Index lowest_common_node(const BasicDendrogram<Scalar>& dendro, Index i, Index j) {
  const Index n = dendro.leaf_count();
  if (i < 0 || i >= n || j < 0 || j >= n) {
    throw ValidationError("object id out of range");
  }
  if (i == j) return i;
  std::vector<char> marked(static_cast<std::size_t>(dendro.node_count()), 0);
  for (Index v = i; v >= 0; v = dendro.parent(v)) marked[static_cast<std::size_t>(v)] = 1;
  Index v = j;
  while (!marked[static_cast<std::size_t>(v)]) v = dendro.parent(v);
  return v;
}

}  // namespace dendrofeat

#endif  // DENDROFEAT_LINKAGE_HPP_
