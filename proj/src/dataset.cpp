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

#include "dendrofeat/dataset.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "dendrofeat/io.hpp"
#include "dendrofeat/random.hpp"

namespace dendrofeat {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    fields.push_back(trim(line.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return fields;
}

bool parse_number(std::string_view field, double& out) {
  if (field.empty()) return false;
  if (field.front() == '+') field.remove_prefix(1);
  const auto [ptr, ec] =
      std::from_chars(field.data(), field.data() + field.size(), out);
  return ec == std::errc() && ptr == field.data() + field.size();
}

}  // namespace

Dataset parse_csv(std::istream& in, bool has_labels) {
  std::vector<std::vector<double>> rows;
  std::vector<std::string> raw_labels;
  std::size_t width = 0;
  std::size_t line_no = 0;
  bool seen_first = false;
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view view = trim(line);
    if (view.empty() || view.front() == '#') continue;
    const auto fields = split_fields(view);
    const std::size_t data_fields = fields.size() - (has_labels ? 1 : 0);
    if (has_labels && fields.size() < 2) {
      throw ParseError(line_no, "expected at least one value and a label");
    }
    std::vector<double> values(data_fields);
    bool numeric = true;
    for (std::size_t c = 0; c < data_fields; ++c) {
      numeric = numeric && parse_number(fields[c], values[c]);
    }
    if (!seen_first) {
      seen_first = true;
      width = fields.size();
      if (!numeric) continue;  // header line
    }
    if (fields.size() != width) {
      throw ParseError(line_no, "expected " + std::to_string(width) +
                                    " fields, found " +
                                    std::to_string(fields.size()));
    }
    if (!numeric) {
      for (std::size_t c = 0; c < data_fields; ++c) {
        double unused;
        if (!parse_number(fields[c], unused)) {
          throw ParseError(line_no, "non-numeric value '" +
                                        std::string(fields[c]) + "'");
        }
      }
    }
    for (double v : values) {
      if (!std::isfinite(v)) throw ParseError(line_no, "non-finite value");
    }
    rows.push_back(std::move(values));
    if (has_labels) raw_labels.emplace_back(fields.back());
  }
  if (rows.empty()) throw ValidationError("CSV input contains no data rows");

  Dataset out;
  const Index d = static_cast<Index>(rows.front().size());
  out.data.resize(static_cast<Index>(rows.size()), d);
  for (Index i = 0; i < out.data.rows(); ++i) {
    for (Index j = 0; j < d; ++j) {
      out.data(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    }
  }
  if (has_labels) {
    std::map<std::string, int> code;
    std::vector<int> ids;
    ids.reserve(raw_labels.size());
    for (const auto& token : raw_labels) {
      auto [it, inserted] = code.try_emplace(token, static_cast<int>(code.size()) + 1);
      ids.push_back(it->second);
    }
    const int k = static_cast<int>(code.size());
    out.labels = Labeling(std::move(ids), k);
  }
  return out;
}

Dataset load_csv(const std::filesystem::path& path, bool has_labels) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  return parse_csv(in, has_labels);
}

void save_csv(std::ostream& out, const DataMatrix& data, const Labeling* labels) {
  if (labels != nullptr && labels->size() != data.rows()) {
    throw ValidationError("label count does not match row count");
  }
  for (Index i = 0; i < data.rows(); ++i) {
    for (Index j = 0; j < data.cols(); ++j) {
      if (j > 0) out << ',';
      out << format_double(data(i, j));
    }
    if (labels != nullptr) out << ',' << (*labels)[i];
    out << '\n';
  }
}

DataMatrix standardize(const DataMatrix& data) {
  DataMatrix out = data;
  const double n = static_cast<double>(data.rows());
  for (Index j = 0; j < data.cols(); ++j) {
    const double mean = data.col(j).mean();
    out.col(j).array() -= mean;
    const double sd = std::sqrt(out.col(j).squaredNorm() / n);
    if (sd > 0.0) out.col(j) /= sd;
  }
  return out;
}

std::pair<DataMatrix, Labeling> gen_two_density(Index n1, Index n2,
                                                double spread1, double spread2,
                                                double separation,
                                                std::uint64_t seed) {
  if (n1 < 1 || n2 < 1) throw ValidationError("blob sizes must be >= 1");
  if (!(spread1 > 0.0) || !(spread2 > 0.0)) {
    throw ValidationError("blob spreads must be positive");
  }
  Rng rng(seed);
  DataMatrix points(n1 + n2, 2);
  std::vector<int> labels(static_cast<std::size_t>(n1 + n2));
  for (Index i = 0; i < n1 + n2; ++i) {
    const bool first = i < n1;
    const double spread = first ? spread1 : spread2;
    points(i, 0) = rng.normal() * spread + (first ? 0.0 : separation);
    points(i, 1) = rng.normal() * spread;
    labels[static_cast<std::size_t>(i)] = first ? 1 : 2;
  }
  return {std::move(points), Labeling(std::move(labels), 2)};
}

}  // namespace dendrofeat
