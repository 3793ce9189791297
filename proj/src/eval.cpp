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

#include "dendrofeat/eval.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace dendrofeat {

Contingency contingency(const Labeling& a, const Labeling& b) {
  if (a.size() != b.size()) throw ValidationError("labelings differ in length");
  std::map<int, Index> ra, rb;
  for (int v : a.labels()) ra.try_emplace(v, static_cast<Index>(ra.size()));
  for (int v : b.labels()) rb.try_emplace(v, static_cast<Index>(rb.size()));
  Contingency c;
  c.n = a.size();
  c.table.setZero(static_cast<Index>(ra.size()), static_cast<Index>(rb.size()));
  for (Index i = 0; i < a.size(); ++i) ++c.table(ra[a[i]], rb[b[i]]);
  c.rows.resize(ra.size());
  c.cols.resize(rb.size());
  for (Index r = 0; r < c.table.rows(); ++r) c.rows[static_cast<std::size_t>(r)] = c.table.row(r).sum();
  for (Index s = 0; s < c.table.cols(); ++s) c.cols[static_cast<std::size_t>(s)] = c.table.col(s).sum();
  return c;
}

namespace {

double comb2(std::int64_t x) { return 0.5 * static_cast<double>(x) * static_cast<double>(x - 1); }

double entropy(const std::vector<std::int64_t>& counts, std::int64_t n) {
  double h = 0.0;
  for (auto c : counts) {
    if (c > 0) {
      const double p = static_cast<double>(c) / static_cast<double>(n);
      h -= p * std::log(p);
    }
  }
  return h;
}

double mutual_information(const Contingency& c) {
  const double n = static_cast<double>(c.n);
  double mi = 0.0;
  for (Index r = 0; r < c.table.rows(); ++r) {
    for (Index s = 0; s < c.table.cols(); ++s) {
      const auto nij = c.table(r, s);
      if (nij == 0) continue;
      const double a = static_cast<double>(c.rows[static_cast<std::size_t>(r)]);
      const double b = static_cast<double>(c.cols[static_cast<std::size_t>(s)]);
      mi += static_cast<double>(nij) / n * std::log(n * static_cast<double>(nij) / (a * b));
    }
  }
  return std::max(mi, 0.0);
}

// E[MI] under the permutation (hypergeometric) model.
double expected_mutual_information(const Contingency& c) {
  const std::int64_t n = c.n;
  const double nd = static_cast<double>(n);
  const double lg_n = std::lgamma(nd + 1.0);
  double emi = 0.0;
  for (auto a : c.rows) {
    for (auto b : c.cols) {
      const std::int64_t lo = std::max<std::int64_t>(1, a + b - n);
      const std::int64_t hi = std::min(a, b);
      const double ad = static_cast<double>(a), bd = static_cast<double>(b);
      const double fixed = std::lgamma(ad + 1.0) + std::lgamma(bd + 1.0) +
                           std::lgamma(nd - ad + 1.0) + std::lgamma(nd - bd + 1.0) - lg_n;
      for (std::int64_t nij = lo; nij <= hi; ++nij) {
        const double x = static_cast<double>(nij);
        const double log_p = fixed - std::lgamma(x + 1.0) - std::lgamma(ad - x + 1.0) -
                             std::lgamma(bd - x + 1.0) - std::lgamma(nd - ad - bd + x + 1.0);
        emi += x / nd * std::log(nd * x / (ad * bd)) * std::exp(log_p);
      }
    }
  }
  return emi;
}

bool same_partition(const Contingency& c) {
  // Identical partitions give a permutation matrix pattern.
  if (c.table.rows() != c.table.cols()) return false;
  for (Index r = 0; r < c.table.rows(); ++r) {
    Index nonzero = 0;
    for (Index s = 0; s < c.table.cols(); ++s) nonzero += c.table(r, s) != 0;
    if (nonzero != 1) return false;
  }
  return true;
}

}  // namespace

double adjusted_rand(const Labeling& a, const Labeling& b) {
  const Contingency c = contingency(a, b);
  double sum_ij = 0.0, sum_a = 0.0, sum_b = 0.0;
  for (Index r = 0; r < c.table.rows(); ++r) {
    for (Index s = 0; s < c.table.cols(); ++s) sum_ij += comb2(c.table(r, s));
  }
  for (auto x : c.rows) sum_a += comb2(x);
  for (auto x : c.cols) sum_b += comb2(x);
  const double expected = sum_a * sum_b / comb2(c.n);
  const double max_index = 0.5 * (sum_a + sum_b);
  const double denom = max_index - expected;
  if (c.n < 2 || denom == 0.0) return same_partition(c) ? 1.0 : 0.0;
  return (sum_ij - expected) / denom;
}

double adjusted_mutual_information(const Labeling& a, const Labeling& b) {
  const Contingency c = contingency(a, b);
  if (same_partition(c)) return 1.0;
  const double mi = mutual_information(c);
  const double emi = expected_mutual_information(c);
  const double mean_h = 0.5 * (entropy(c.rows, c.n) + entropy(c.cols, c.n));
  const double denom = mean_h - emi;
  if (std::abs(denom) < 1e-15) return 0.0;
  return (mi - emi) / denom;
}

double v_measure(const Labeling& a, const Labeling& b) {
  const Contingency c = contingency(a, b);
  if (same_partition(c)) return 1.0;
  const double ha = entropy(c.rows, c.n);
  const double hb = entropy(c.cols, c.n);
  const double mi = mutual_information(c);
  // H(a|b) = H(a) - MI; a zero entropy resolves its ratio to 1.
  const double homogeneity = ha > 0.0 ? std::clamp(mi / ha, 0.0, 1.0) : 1.0;
  const double completeness = hb > 0.0 ? std::clamp(mi / hb, 0.0, 1.0) : 1.0;
  if (homogeneity + completeness == 0.0) return 0.0;
  return 2.0 * homogeneity * completeness / (homogeneity + completeness);
}

Scores score(const Labeling& truth, const Labeling& predicted) {
  return {adjusted_mutual_information(truth, predicted), adjusted_rand(truth, predicted),
          v_measure(truth, predicted)};
}

}  // namespace dendrofeat
