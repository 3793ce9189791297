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

#ifndef DENDROFEAT_ENSEMBLE_HPP_
#define DENDROFEAT_ENSEMBLE_HPP_

#include <cstdint>
#include <span>
#include <vector>

#include "dendrofeat/core.hpp"

namespace dendrofeat {

using IntMatrix = Eigen::Matrix<int, Eigen::Dynamic, Eigen::Dynamic>;

/// Signed agreement counts over M clusterings: entry (i, j) is the number of
/// solutions placing i and j together minus the number separating them.
/// Symmetric, |S_ij| <= M, M - S_ij even, diagonal M.
class CoAssociation {
 public:
  CoAssociation() = default;
  CoAssociation(IntMatrix values, int m);

  Index size() const { return values_.rows(); }
  int solutions() const { return m_; }
  int operator()(Index i, Index j) const { return values_(i, j); }
  const IntMatrix& values() const { return values_; }

 private:
  IntMatrix values_;
  int m_ = 0;
};

CoAssociation co_association(std::span<const Labeling> solutions);

/// Correlation clustering cost
///   1/2 sum_k sum_{i,j in O_k} (|S_ij| - S_ij)
/// + 1/2 sum_{k<k'} sum_{i in O_k, j in O_k'} (|S_ij| + S_ij)
/// where the first sum runs over ordered pairs. Each negative pair inside a
/// cluster costs 2|S_ij|, each positive pair across clusters costs S_ij.
std::int64_t cc_cost(const Labeling& c, const CoAssociation& s);

/// Share of the cost attached to object i:
///   sum_{j in O_c(i), j != i} (|S_ij| - S_ij) + 1/2 sum_{j not in O_c(i)} (|S_ij| + S_ij).
/// Moving i changes the cost by exactly the change of this quantity, and the
/// contributions of all objects sum to twice the cost.
std::int64_t cc_contribution(const Labeling& c, const CoAssociation& s, Index i);

/// Cost after moving object i to `target`, given the current cost.
std::int64_t cc_moved_cost(const Labeling& c, const CoAssociation& s,
                           std::int64_t current_cost, Index i, int target);

struct LocalSearchOptions {
  int restarts = 100;
  int max_sweeps = 1000;
  std::uint64_t seed = 42;
  int threads = 1;
};

struct LocalSearchResult {
  Labeling labels;
  std::int64_t cost = 0;
  int best_restart = 0;
  // Cost after every accepted move of the best restart, starting with the
  // cost of its random initial labeling.
  std::vector<std::int64_t> trace;
};

/// Greedy local search from random labelings in 1..k. Objects are visited in
/// ascending order; each moves to the cluster of least cost (lowest id on
/// ties) when that strictly improves. A restart ends after a sweep without
/// moves or after max_sweeps sweeps; the cheapest restart wins.
LocalSearchResult cc_local_search(const CoAssociation& s, int k,
                                  const LocalSearchOptions& opt = {});

}  // namespace dendrofeat

#endif  // DENDROFEAT_ENSEMBLE_HPP_
