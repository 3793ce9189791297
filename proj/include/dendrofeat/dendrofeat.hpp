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

#ifndef DENDROFEAT_DENDROFEAT_HPP_
#define DENDROFEAT_DENDROFEAT_HPP_

#include "dendrofeat/cluster.hpp"
#include "dendrofeat/core.hpp"
#include "dendrofeat/dataset.hpp"
#include "dendrofeat/dendro_distance.hpp"
#include "dendrofeat/embedding.hpp"
#include "dendrofeat/ensemble.hpp"
#include "dendrofeat/eval.hpp"
#include "dendrofeat/io.hpp"
#include "dendrofeat/linkage.hpp"
#include "dendrofeat/pipeline.hpp"

#endif  // DENDROFEAT_DENDROFEAT_HPP_
