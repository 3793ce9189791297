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

#ifndef DENDROFEAT_EVAL_HPP_
#define DENDROFEAT_EVAL_HPP_

#include <cstdint>
#include <vector>

#include "dendrofeat/core.hpp"

namespace dendrofeat {

/// Co-occurrence counts of two labelings over the clusters each one uses.
struct Contingency {
  Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic> table;
  std::vector<std::int64_t> rows;  // marginals of the first labeling
  std::vector<std::int64_t> cols;  // marginals of the second labeling
  std::int64_t n = 0;
};

Contingency contingency(const Labeling& a, const Labeling& b);

/// Hubert-Arabie adjusted Rand index.
double adjusted_rand(const Labeling& a, const Labeling& b);

/// Adjusted mutual information with arithmetic-mean normalization and the
/// exact hypergeometric expectation of MI. Natural logarithms.
double adjusted_mutual_information(const Labeling& a, const Labeling& b);

/// Harmonic mean of homogeneity and completeness.
double v_measure(const Labeling& a, const Labeling& b);

struct Scores {
  double mi = 0.0;
  double rand = 0.0;
  double vm = 0.0;
};

Scores score(const Labeling& truth, const Labeling& predicted);

}  // namespace dendrofeat

#endif  // DENDROFEAT_EVAL_HPP_
