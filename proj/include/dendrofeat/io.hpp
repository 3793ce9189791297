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

#ifndef DENDROFEAT_IO_HPP_
#define DENDROFEAT_IO_HPP_

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "dendrofeat/core.hpp"

namespace dendrofeat {

// 17 significant digits; parses back to the identical double.
std::string format_double(double v);

/// Matrix CSV: a "# n=<rows> cols=<cols>" comment line, then one row per line.
void write_matrix_csv(std::ostream& out, const Matrix<double>& m);
Matrix<double> read_matrix_csv(std::istream& in);
Matrix<double> read_matrix_csv(const std::filesystem::path& path);

/// Labels: one integer per line.
void write_labels(std::ostream& out, const Labeling& labels);
Labeling read_labels(std::istream& in);
Labeling read_labels(const std::filesystem::path& path);

void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace dendrofeat

#endif  // DENDROFEAT_IO_HPP_
