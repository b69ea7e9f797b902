// diarscore/der.h
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
// Diarization error rate, DER = (MISS + FA + ERROR) / TOTAL.
//
// With Nref(t), Nhyp(t) the numbers of active reference and hypothesis
// speakers and Ncorrect(t) the number of mapped pairs speaking together:
//
//   MISS  = sum over t of max(0, Nref - Nhyp)
//   FA    = sum over t of max(0, Nhyp - Nref)
//   ERROR = sum over t of min(Nref, Nhyp) - Ncorrect
//   TOTAL = sum over t of Nref
//
// Only scored time counts: a no-score zone of +/- collar surrounds every
// reference boundary, and reference overlap is dropped when score_overlap is
// false.

#ifndef DIARSCORE_DER_H_
#define DIARSCORE_DER_H_

#include <cstdint>
#include <span>
#include <vector>

#include "diarscore/mapping.h"
#include "diarscore/timeline.h"

namespace diarscore {

struct DerConfig {
  double collar_s = 0.25;
  bool score_overlap = true;
};

struct DerReport {
  TimeMs miss_ms;
  TimeMs fa_ms;
  TimeMs error_ms;
  TimeMs total_ms;
  double der = 0.0;

  friend bool operator==(const DerReport &, const DerReport &) = default;
};

// Collar in whole milliseconds, rounded half away from zero. Throws
// InvalidConfig on a negative or non-finite collar.
TimeMs collar_ms(const DerConfig &cfg);

// Complement, within [0, extent_end_ms), of the union of
// [b - collar, b + collar) over every reference boundary b.
std::vector<Segment> scoring_regions(const Annotation &ref, TimeMs collar,
                                     std::int64_t extent_end_ms);

// Same with the extent ending at the last reference boundary.
std::vector<Segment> scoring_regions(const Annotation &ref, TimeMs collar);

// Time where two or more reference speakers talk at once.
std::vector<Segment> overlap_regions(const Annotation &ann);

// Sorted, disjoint difference a \ b of two sorted, disjoint segment lists.
std::vector<Segment> subtract_regions(std::span<const Segment> a,
                                      std::span<const Segment> b);

// Clips every turn to the sorted, disjoint `regions`. Turns may split.
Annotation restrict_to(const Annotation &ann, std::span<const Segment> regions);

// Regions scored by compute_der for this pair, honouring collar and overlap
// settings.
std::vector<Segment> der_scored_regions(const Annotation &ref,
                                        const Annotation &hyp,
                                        const DerConfig &cfg);

// Throws EmptyReference when no reference speech remains in scored time.
DerReport compute_der(const Annotation &ref, const Annotation &hyp,
                      const DerConfig &cfg = {});

// Duration accounting for a fixed speaker map on already restricted
// annotations. Does not throw on zero TOTAL; der is 0 then.
DerReport der_with_map(const Annotation &ref, const Annotation &hyp,
                       const SpeakerMap &map);

// Sums every duration and recomputes der. Throws EmptyInput on an empty list
// and EmptyReference when the summed TOTAL is 0.
DerReport aggregate_der(std::span<const DerReport> reports);

}  // namespace diarscore

#endif  // DIARSCORE_DER_H_
