// diarscore/mapping.h
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

#ifndef DIARSCORE_MAPPING_H_
#define DIARSCORE_MAPPING_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "diarscore/timeline.h"

namespace diarscore {

// Row-major matrix of shared speaking time. Rows follow ref_labels and
// columns hyp_labels, both sorted.
struct OverlapMatrix {
  std::vector<std::string> ref_labels;
  std::vector<std::string> hyp_labels;
  std::vector<std::int64_t> ms;

  std::int64_t at(std::size_t r, std::size_t h) const {
    return ms[r * hyp_labels.size() + h];
  }
};

OverlapMatrix overlap_matrix(const Annotation &ref, const Annotation &hyp);

// One-to-one partial mapping between reference and hypothesis speakers.
struct SpeakerMap {
  // Sorted by reference label.
  std::vector<std::pair<std::string, std::string>> pairs;
  std::vector<std::string> unmatched_ref;
  std::vector<std::string> unmatched_hyp;

  std::optional<std::string_view> hyp_for(std::string_view ref_label) const;
  std::optional<std::string_view> ref_for(std::string_view hyp_label) const;

  friend bool operator==(const SpeakerMap &, const SpeakerMap &) = default;
};

// Assignment on a dense weight matrix. Returns, for each row, the column it
// is assigned to or -1. Only positive-weight cells are ever assigned. The
// total weight is maximal; among maximal assignments the one whose
// (row, column) pair list is lexicographically smallest is returned, rows and
// columns being compared by index.
std::vector<int> max_weight_assignment(const std::vector<std::int64_t> &weights,
                                       std::size_t rows, std::size_t cols);

// Maximum total overlap; zero-overlap pairs are left unmatched. Ties are
// broken towards the lexicographically smallest (ref, hyp) pair list.
SpeakerMap match_speakers(const Annotation &ref, const Annotation &hyp);

// Builds the map from a precomputed matrix.
SpeakerMap match_speakers(const OverlapMatrix &matrix);

// Sum of overlap over the mapped pairs.
std::int64_t matched_overlap(const OverlapMatrix &matrix, const SpeakerMap &map);

}  // namespace diarscore

#endif  // DIARSCORE_MAPPING_H_
