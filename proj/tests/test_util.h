// tests/test_util.h
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
//
// Seeded generators for property tests.

#ifndef DIARSCORE_TESTS_TEST_UTIL_H_
#define DIARSCORE_TESTS_TEST_UTIL_H_

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "diarscore/timeline.h"

namespace diarscore::testing {

inline std::string label(const std::string &prefix, int k) {
  return prefix + std::to_string(k);
}

// Random annotation with 1 ms aligned turns inside [0, extent_ms). Without
// cross-speaker overlap, all turns form one disjoint sequence.
inline Annotation random_annotation(std::mt19937_64 &rng, int n_speakers,
                                    std::int64_t extent_ms, bool overlap,
                                    const std::string &prefix = "S",
                                    std::int64_t max_turn_ms = 3000,
                                    std::int64_t max_gap_ms = 1500) {
  std::uniform_int_distribution<std::int64_t> dur(1, max_turn_ms);
  std::uniform_int_distribution<std::int64_t> gap(0, max_gap_ms);
  std::uniform_int_distribution<int> who(0, n_speakers - 1);
  std::vector<Turn> turns;
  if (overlap) {
    for (int k = 0; k < n_speakers; ++k) {
      std::int64_t t = gap(rng);
      while (true) {
        std::int64_t d = dur(rng);
        if (t + d > extent_ms) break;
        turns.push_back(Turn{label(prefix, k), Segment(t, t + d)});
        t += d + gap(rng) * n_speakers;
      }
    }
  } else {
    std::int64_t t = gap(rng);
    while (true) {
      std::int64_t d = dur(rng);
      if (t + d > extent_ms) break;
      turns.push_back(Turn{label(prefix, who(rng)), Segment(t, t + d)});
      t += d + gap(rng);
    }
  }
  if (turns.empty()) {
    turns.push_back(Turn{label(prefix, 0), Segment(0, std::max<std::int64_t>(1, extent_ms / 2))});
  }
  return Annotation("rec", std::move(turns));
}

// Same turns with every speaker label passed through `rename`.
template <typename F>
Annotation relabel(const Annotation &ann, F rename) {
  std::vector<Turn> turns = ann.turns();
  for (Turn &t : turns) t.speaker = rename(t.speaker);
  return Annotation(ann.recording_id(), std::move(turns));
}

inline Annotation shifted(const Annotation &ann, std::int64_t offset_ms) {
  std::vector<Turn> turns = ann.turns();
  for (Turn &t : turns) {
    t.segment = Segment(t.segment.start_ms() + offset_ms,
                        t.segment.end_ms() + offset_ms);
  }
  return Annotation(ann.recording_id(), std::move(turns));
}

inline Annotation make(std::vector<Turn> turns, std::string id = "rec1") {
  return Annotation(std::move(id), std::move(turns));
}

// Enumerates every partial one-to-one row->column assignment over positive
// weights. Returns the best total and, among optimal assignments, the
// lexicographically smallest row vector with "unassigned" (-1) ordered after
// every column.
struct BruteAssignment {
  std::int64_t total = 0;
  std::vector<int> assignment;
};

inline BruteAssignment brute_force_assignment(
    const std::vector<std::int64_t> &w, std::size_t rows, std::size_t cols) {
  BruteAssignment best{-1, {}};
  std::vector<int> cur(rows, -1);
  std::vector<char> used(cols, 0);
  auto key = [](const std::vector<int> &v) {
    std::vector<long> k;
    for (int x : v) k.push_back(x < 0 ? 1L << 30 : x);
    return k;
  };
  auto rec = [&](auto &&self, std::size_t i, std::int64_t total) -> void {
    if (i == rows) {
      if (total > best.total ||
          (total == best.total && key(cur) < key(best.assignment))) {
        best.total = total;
        best.assignment = cur;
      }
      return;
    }
    for (std::size_t j = 0; j < cols; ++j) {
      if (used[j] || w[i * cols + j] <= 0) continue;
      used[j] = 1;
      cur[i] = static_cast<int>(j);
      self(self, i + 1, total + w[i * cols + j]);
      used[j] = 0;
    }
    cur[i] = -1;
    self(self, i + 1, total);
  };
  rec(rec, 0, 0);
  return best;
}

inline std::vector<std::int64_t> random_matrix(std::mt19937_64 &rng,
                                               std::size_t rows,
                                               std::size_t cols) {
  // Small values and frequent zeros provoke ties.
  std::uniform_int_distribution<int> kind(0, 3);
  std::uniform_int_distribution<std::int64_t> small(0, 5);
  std::uniform_int_distribution<std::int64_t> large(0, 100000);
  std::vector<std::int64_t> w(rows * cols);
  const bool tie_heavy = kind(rng) < 2;
  for (auto &x : w) {
    x = kind(rng) == 0 ? 0 : (tie_heavy ? small(rng) : large(rng));
  }
  return w;
}

}  // namespace diarscore::testing

#endif  // DIARSCORE_TESTS_TEST_UTIL_H_
