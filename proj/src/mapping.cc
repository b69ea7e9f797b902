// diarscore/mapping.cc
//
// Copyright (c)  2026  The diarscore Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "diarscore/mapping.h"

#include <algorithm>
#include <limits>

namespace diarscore {

namespace {

// Maximum total weight of a (not necessarily perfect) assignment restricted
// to the given rows and columns. Kuhn-Munkres with potentials on the square
// padding of the matrix; padding cells weigh 0, which is the same as leaving
// a row or column unassigned.
std::int64_t max_assignment_value(const std::vector<std::int64_t> &weights,
                                  std::size_t cols,
                                  const std::vector<std::size_t> &row_ids,
                                  const std::vector<std::size_t> &col_ids) {
  const std::size_t n = std::max(row_ids.size(), col_ids.size());
  if (n == 0) return 0;
  auto cost = [&](std::size_t i, std::size_t j) -> std::int64_t {
    if (i >= row_ids.size() || j >= col_ids.size()) return 0;
    return -std::max<std::int64_t>(0, weights[row_ids[i] * cols + col_ids[j]]);
  };

  constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max() / 4;
  // 1-based arrays, column 0 is the virtual source.
  std::vector<std::int64_t> u(n + 1, 0), v(n + 1, 0);
  std::vector<std::size_t> p(n + 1, 0), way(n + 1, 0);
  for (std::size_t i = 1; i <= n; ++i) {
    p[0] = i;
    std::size_t j0 = 0;
    std::vector<std::int64_t> minv(n + 1, kInf);
    std::vector<char> used(n + 1, 0);
    do {
      used[j0] = 1;
      std::size_t i0 = p[j0], j1 = 0;
      std::int64_t delta = kInf;
      for (std::size_t j = 1; j <= n; ++j) {
        if (used[j]) continue;
        std::int64_t cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      std::size_t j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  std::int64_t total = 0;
  for (std::size_t j = 1; j <= n; ++j) total -= cost(p[j] - 1, j - 1);
  return total;
}

}  // namespace

std::vector<int> max_weight_assignment(const std::vector<std::int64_t> &weights,
                                       std::size_t rows, std::size_t cols) {
  std::vector<std::size_t> live_rows(rows), live_cols(cols);
  for (std::size_t i = 0; i < rows; ++i) live_rows[i] = i;
  for (std::size_t j = 0; j < cols; ++j) live_cols[j] = j;

  std::int64_t remaining =
      max_assignment_value(weights, cols, live_rows, live_cols);
  std::vector<int> assignment(rows, -1);

  // Fix rows in order, each to the smallest column that still admits an
  // optimal completion. A row that admits none is left unassigned, which is
  // always optimal-compatible at that point.
  for (std::size_t i = 0; i < rows; ++i) {
    std::vector<std::size_t> rest_rows;
    for (std::size_t r : live_rows) {
      if (r != i) rest_rows.push_back(r);
    }
    if (remaining > 0) {
      for (std::size_t j : live_cols) {
        std::int64_t w = weights[i * cols + j];
        if (w <= 0 || w > remaining) continue;
        std::vector<std::size_t> rest_cols;
        for (std::size_t c : live_cols) {
          if (c != j) rest_cols.push_back(c);
        }
        if (w + max_assignment_value(weights, cols, rest_rows, rest_cols) ==
            remaining) {
          assignment[i] = static_cast<int>(j);
          remaining -= w;
          live_cols = std::move(rest_cols);
          break;
        }
      }
    }
    live_rows = std::move(rest_rows);
  }
  return assignment;
}

OverlapMatrix overlap_matrix(const Annotation &ref, const Annotation &hyp) {
  OverlapMatrix m;
  m.ref_labels = ref.speakers();
  m.hyp_labels = hyp.speakers();
  m.ms.reserve(m.ref_labels.size() * m.hyp_labels.size());
  for (const std::string &r : m.ref_labels) {
    for (const std::string &h : m.hyp_labels) {
      m.ms.push_back(timeline_intersection(ref.timeline(r), hyp.timeline(h)));
    }
  }
  return m;
}

SpeakerMap match_speakers(const OverlapMatrix &matrix) {
  const std::size_t rows = matrix.ref_labels.size();
  const std::size_t cols = matrix.hyp_labels.size();
  std::vector<int> assignment = max_weight_assignment(matrix.ms, rows, cols);

  SpeakerMap map;
  std::vector<char> hyp_used(cols, 0);
  for (std::size_t i = 0; i < rows; ++i) {
    if (assignment[i] < 0) {
      map.unmatched_ref.push_back(matrix.ref_labels[i]);
    } else {
      map.pairs.emplace_back(matrix.ref_labels[i],
                             matrix.hyp_labels[assignment[i]]);
      hyp_used[assignment[i]] = 1;
    }
  }
  for (std::size_t j = 0; j < cols; ++j) {
    if (!hyp_used[j]) map.unmatched_hyp.push_back(matrix.hyp_labels[j]);
  }
  return map;
}

SpeakerMap match_speakers(const Annotation &ref, const Annotation &hyp) {
  return match_speakers(overlap_matrix(ref, hyp));
}

std::optional<std::string_view> SpeakerMap::hyp_for(
    std::string_view ref_label) const {
  auto it = std::lower_bound(
      pairs.begin(), pairs.end(), ref_label,
      [](const auto &pair, std::string_view key) { return pair.first < key; });
  if (it == pairs.end() || it->first != ref_label) return std::nullopt;
  return it->second;
}

std::optional<std::string_view> SpeakerMap::ref_for(
    std::string_view hyp_label) const {
  for (const auto &[r, h] : pairs) {
    if (h == hyp_label) return r;
  }
  return std::nullopt;
}

std::int64_t matched_overlap(const OverlapMatrix &matrix,
                             const SpeakerMap &map) {
  std::int64_t total = 0;
  for (const auto &[r, h] : map.pairs) {
    auto ri = std::lower_bound(matrix.ref_labels.begin(),
                               matrix.ref_labels.end(), r) -
              matrix.ref_labels.begin();
    auto hi = std::lower_bound(matrix.hyp_labels.begin(),
                               matrix.hyp_labels.end(), h) -
              matrix.hyp_labels.begin();
    total += matrix.at(ri, hi);
  }
  return total;
}

}  // namespace diarscore
