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
#include <map>
#include <set>

#include "dendrofeat/core.hpp"

namespace dendrofeat {

Labeling::Labeling(std::vector<int> labels, int k)
    : labels_(std::move(labels)), k_(k) {
  if (k_ < 1) throw ValidationError("labeling needs k >= 1");
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (labels_[i] < 1 || labels_[i] > k_) {
      throw ValidationError("label " + std::to_string(labels_[i]) +
                            " of object " + std::to_string(i) +
                            " outside 1.." + std::to_string(k_));
    }
  }
}

Labeling Labeling::encode(std::span<const int> raw) {
  std::map<int, int> code;
  std::vector<int> labels;
  labels.reserve(raw.size());
  for (int v : raw) {
    auto [it, inserted] = code.try_emplace(v, static_cast<int>(code.size()) + 1);
    labels.push_back(it->second);
  }
  const int k = std::max<int>(1, static_cast<int>(code.size()));
  return Labeling(std::move(labels), k);
}

int Labeling::used_clusters() const {
  return static_cast<int>(std::set<int>(labels_.begin(), labels_.end()).size());
}

}  // namespace dendrofeat
