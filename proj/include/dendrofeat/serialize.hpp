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

#ifndef DENDROFEAT_SERIALIZE_HPP_
#define DENDROFEAT_SERIALIZE_HPP_

#include "json.hpp"

#include "dendrofeat/dendro_distance.hpp"
#include "dendrofeat/embedding.hpp"
#include "dendrofeat/eval.hpp"
#include "dendrofeat/linkage.hpp"

namespace dendrofeat {

// Bumped whenever a JSON layout below changes.
inline constexpr int kSchemaVersion = 1;

/// {"n": n, "merges": [{"left", "right", "height", "size"}, ...]}
nlohmann::json dendrogram_to_json(const Dendrogram& d);
Dendrogram dendrogram_from_json(const nlohmann::json& j);

nlohmann::json spectrum_to_json(const Spectrum& s);
nlohmann::json report_to_json(const UltrametricReport& r);
nlohmann::json scores_to_json(const Scores& s);

}  // namespace dendrofeat

#endif  // DENDROFEAT_SERIALIZE_HPP_
