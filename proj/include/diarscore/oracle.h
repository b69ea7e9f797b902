// diarscore/oracle.h
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
// Brute-force references for the metric engines. They share no code path
// with der.cc or the greedy utterance matcher and are deliberately slow:
// every 1 ms instant is examined separately, and utterance assignments are
// enumerated exhaustively.

#ifndef DIARSCORE_ORACLE_H_
#define DIARSCORE_ORACLE_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "diarscore/cder.h"
#include "diarscore/der.h"
#include "diarscore/mapping.h"
#include "diarscore/timeline.h"

namespace diarscore {

// 4 hours of 1 ms instants.
inline constexpr std::int64_t kMaxGridExtentMs = 4LL * 3600 * 1000;
inline constexpr std::size_t kMaxGridSpeakers = 64;
inline constexpr std::size_t kMaxExhaustiveUtterances = 8;

// Per-instant speaker activity. Bit k of active[t] is set iff speaker
// labels[k] is active during [t, t + 1).
struct GridTimeline {
  static constexpr std::int64_t step_ms = 1;
  std::vector<std::string> labels;
  std::vector<std::uint64_t> active;

  // Throws ExtentTooLarge past kMaxGridExtentMs or kMaxGridSpeakers.
  static GridTimeline paint(const Annotation &ann, std::int64_t extent_ms);
};

// DER by counting instants. The speaker map is obtained by handing the
// grid-restricted annotations to match_speakers, as compute_der does.
// Throws ExtentTooLarge, and EmptyReference when no reference instant is
// scored.
DerReport grid_der(const Annotation &ref, const Annotation &hyp,
                   const DerConfig &cfg = {});

// Instant-counting overlap matrix, comparable with overlap_matrix().
OverlapMatrix grid_overlap_matrix(const Annotation &ref, const Annotation &hyp);

// Exhaustive partial assignment maximising total intersection. Only
// positive-intersection pairs are used. Ties go to the lexicographically
// smallest vector of hypothesis indices, an unmatched reference sorting after
// every index. Throws TooManyUtterances past kMaxExhaustiveUtterances.
std::vector<UtteranceMatch> exhaustive_cder_match(
    std::span<const MergedUtterance> ref_utts,
    std::span<const MergedUtterance> hyp_utts);

// Total intersection of an utterance assignment.
std::int64_t matched_intersection(std::span<const MergedUtterance> ref_utts,
                                  std::span<const MergedUtterance> hyp_utts,
                                  std::span<const UtteranceMatch> matches);

}  // namespace diarscore

#endif  // DIARSCORE_ORACLE_H_
