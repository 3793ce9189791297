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

#include "dendrofeat/io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "dendrofeat/dataset.hpp"

namespace dendrofeat {

std::string format_double(double v) {
  char buf[32];
  const int len = std::snprintf(buf, sizeof(buf), "%.17g", v);
  return std::string(buf, static_cast<std::size_t>(len));
}

void write_matrix_csv(std::ostream& out, const Matrix<double>& m) {
  out << "# n=" << m.rows() << " cols=" << m.cols() << '\n';
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) {
      if (j > 0) out << ',';
      out << format_double(m(i, j));
    }
    out << '\n';
  }
}

Matrix<double> read_matrix_csv(std::istream& in) {
  std::string first;
  std::streampos start = in.tellg();
  // An "n=" header with zero columns describes an empty embedding.
  if (std::getline(in, first) && first.rfind("# n=", 0) == 0) {
    long rows = 0, cols = -1;
    if (std::sscanf(first.c_str(), "# n=%ld cols=%ld", &rows, &cols) == 2 &&
        cols == 0) {
      return Matrix<double>::Zero(rows, 0);
    }
  }
  in.clear();
  in.seekg(start);
  return parse_csv(in, false).data;
}

Matrix<double> read_matrix_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  return read_matrix_csv(in);
}

void write_labels(std::ostream& out, const Labeling& labels) {
  for (int v : labels.labels()) out << v << '\n';
}

Labeling read_labels(std::istream& in) {
  std::vector<int> raw;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    const auto last = line.find_last_not_of(" \t\r");
    const char* begin = line.data() + first;
    const char* end = line.data() + last + 1;
    int v = 0;
    const auto [ptr, ec] = std::from_chars(begin, end, v);
    if (ec != std::errc() || ptr != end) {
      throw ParseError(line_no, "expected an integer label");
    }
    raw.push_back(v);
  }
  if (raw.empty()) throw ValidationError("label file contains no labels");
  return Labeling::encode(raw);
}

Labeling read_labels(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  return read_labels(in);
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << text;
  if (!out) throw Error("failed writing " + path.string());
}

}  // namespace dendrofeat
