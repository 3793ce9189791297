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

#include "dendrofeat/serialize.hpp"

namespace dendrofeat {

nlohmann::json dendrogram_to_json(const Dendrogram& d) {
  nlohmann::json merges = nlohmann::json::array();
  for (const auto& m : d.merges()) {
    merges.push_back({{"left", m.left}, {"right", m.right}, {"height", m.height}, {"size", m.size}});
  }
  return {{"n", d.leaf_count()}, {"merges", std::move(merges)}};
}

Dendrogram dendrogram_from_json(const nlohmann::json& j) {
  try {
    std::vector<Merge> merges;
    for (const auto& m : j.at("merges")) {
      merges.push_back({m.at("left").get<Index>(), m.at("right").get<Index>(),
                        m.at("height").get<double>(), m.at("size").get<Index>()});
    }
    return Dendrogram(j.at("n").get<Index>(), std::move(merges));
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("malformed dendrogram JSON: ") + e.what());
  }
}

nlohmann::json spectrum_to_json(const Spectrum& s) {
  std::vector<double> values(s.eigenvalues.data(), s.eigenvalues.data() + s.eigenvalues.size());
  return {{"eigenvalues", values}, {"sweeps", s.sweeps}};
}

nlohmann::json report_to_json(const UltrametricReport& r) {
  nlohmann::json out = {{"is_ultrametric", r.is_ultrametric},
                        {"worst_violation", r.worst_violation},
                        {"witness", nullptr}};
  if (r.witness) out["witness"] = {r.witness->i, r.witness->j, r.witness->k};
  return out;
}

nlohmann::json scores_to_json(const Scores& s) {
  return {{"MI", s.mi}, {"Rand", s.rand}, {"VM", s.vm}};
}

}  // namespace dendrofeat
