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

#include "dendrofeat/ensemble.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>

#include "dendrofeat/parallel.hpp"
#include "dendrofeat/random.hpp"

namespace dendrofeat {

CoAssociation::CoAssociation(IntMatrix values, int m) : values_(std::move(values)), m_(m) {
  if (m_ < 1) throw ValidationError("co-association needs at least one solution");
  if (values_.rows() != values_.cols()) {
    throw ValidationError("co-association matrix must be square");
  }
  const Index n = values_.rows();
  for (Index j = 0; j < n; ++j) {
    if (values_(j, j) != m_) {
      throw ValidationError("co-association diagonal must equal M");
    }
    for (Index i = 0; i < n; ++i) {
      const int v = values_(i, j);
      if (v != values_(j, i)) throw ValidationError("co-association is not symmetric");
      if (std::abs(v) > m_ || (m_ - v) % 2 != 0) {
        throw ValidationError("co-association entry (" + std::to_string(i) + "," +
                              std::to_string(j) + ") = " + std::to_string(v) +
                              " is not a sum of " + std::to_string(m_) + " signs");
      }
    }
  }
}

CoAssociation co_association(std::span<const Labeling> solutions) {
  if (solutions.empty()) throw ValidationError("no clustering solutions to aggregate");
  const Index n = solutions.front().size();
  IntMatrix s = IntMatrix::Zero(n, n);
  for (const Labeling& c : solutions) {
    if (c.size() != n) {
      throw ValidationError("clustering solutions disagree on the object count");
    }
    for (Index j = 0; j < n; ++j) {
      for (Index i = 0; i < n; ++i) s(i, j) += c[i] == c[j] ? 1 : -1;
    }
  }
  return CoAssociation(std::move(s), static_cast<int>(solutions.size()));
}

namespace {

void require_match(const Labeling& c, const CoAssociation& s) {
  if (c.size() != s.size()) {
    throw ValidationError("labeling and co-association sizes differ");
  }
}

// Cost of object i sitting in cluster q, split into the per-cluster sums of
// positive and negative weights towards every other object.
struct Row {
  std::vector<std::int64_t> pos;  // sum of S_ij > 0 per cluster
  std::vector<std::int64_t> neg;  // sum of -S_ij > 0 per cluster
  std::int64_t pos_total = 0;

  std::int64_t contribution(int q) const {
    const auto k = static_cast<std::size_t>(q - 1);
    return 2 * neg[k] + (pos_total - pos[k]);
  }
};

Row row_sums(const std::vector<int>& labels, int k, const IntMatrix& s, Index i) {
  Row r;
  r.pos.assign(static_cast<std::size_t>(k), 0);
  r.neg.assign(static_cast<std::size_t>(k), 0);
  for (Index j = 0; j < s.rows(); ++j) {
    if (j == i) continue;
    const int v = s(i, j);
    const auto q = static_cast<std::size_t>(labels[static_cast<std::size_t>(j)] - 1);
    if (v > 0) {
      r.pos[q] += v;
      r.pos_total += v;
    } else {
      r.neg[q] -= v;
    }
  }
  return r;
}

}  // namespace

std::int64_t cc_cost(const Labeling& c, const CoAssociation& s) {
  require_match(c, s);
  const Index n = s.size();
  std::int64_t intra = 0;  // ordered pairs, halved below
  std::int64_t cross = 0;  // unordered pairs, halved below
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      const std::int64_t v = s(i, j);
      const std::int64_t mag = v < 0 ? -v : v;
      if (c[i] == c[j]) {
        intra += mag - v;
      } else if (c[i] < c[j]) {
        cross += mag + v;
      }
    }
  }
  return intra / 2 + cross / 2;
}

std::int64_t cc_contribution(const Labeling& c, const CoAssociation& s, Index i) {
  require_match(c, s);
  if (i < 0 || i >= c.size()) throw ValidationError("object id out of range");
  return row_sums(c.labels(), c.k(), s.values(), i).contribution(c[i]);
}

std::int64_t cc_moved_cost(const Labeling& c, const CoAssociation& s,
                           std::int64_t current_cost, Index i, int target) {
  require_match(c, s);
  if (i < 0 || i >= c.size()) throw ValidationError("object id out of range");
  if (target < 1 || target > c.k()) throw ValidationError("target cluster out of range");
  const Row r = row_sums(c.labels(), c.k(), s.values(), i);
  return current_cost - r.contribution(c[i]) + r.contribution(target);
}

namespace {

struct Restart {
  std::vector<int> labels;
  std::int64_t cost = 0;
  std::vector<std::int64_t> trace;
};

Restart search_once(const CoAssociation& s, int k, int max_sweeps, Rng& rng) {
  const Index n = s.size();
  Restart run;
  run.labels.resize(static_cast<std::size_t>(n));
  for (auto& l : run.labels) l = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(k)));
  run.cost = cc_cost(Labeling(run.labels, k), s);
  run.trace.push_back(run.cost);

  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    bool moved = false;
    for (Index i = 0; i < n; ++i) {
      const Row r = row_sums(run.labels, k, s.values(), i);
      int& own = run.labels[static_cast<std::size_t>(i)];
      int best = 1;
      for (int q = 2; q <= k; ++q) {
        if (r.contribution(q) < r.contribution(best)) best = q;
      }
      const std::int64_t now = r.contribution(own);
      const std::int64_t then = r.contribution(best);
      if (then < now) {
        run.cost += then - now;
        own = best;
        moved = true;
        run.trace.push_back(run.cost);
      }
    }
    if (!moved) break;
  }
  return run;
}

}  // namespace

LocalSearchResult cc_local_search(const CoAssociation& s, int k, const LocalSearchOptions& opt) {
  if (k < 1) throw ValidationError("correlation clustering needs k >= 1");
  if (opt.restarts < 1) throw ValidationError("local search needs at least one restart");
  std::vector<Restart> runs(static_cast<std::size_t>(opt.restarts));
  parallel_for(opt.restarts, opt.threads, [&](int r) {
    Rng rng(opt.seed, static_cast<std::uint64_t>(r));
    runs[static_cast<std::size_t>(r)] = search_once(s, k, opt.max_sweeps, rng);
  });
  int best = 0;
  for (int r = 1; r < opt.restarts; ++r) {
    if (runs[static_cast<std::size_t>(r)].cost < runs[static_cast<std::size_t>(best)].cost) best = r;
  }
  Restart& w = runs[static_cast<std::size_t>(best)];
  return {Labeling(std::move(w.labels), k), w.cost, best, std::move(w.trace)};
}

}  // namespace dendrofeat
