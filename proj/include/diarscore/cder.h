// diarscore/cder.h
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
// Conversational diarization error rate: utterance-level mistakes over the
// number of reference utterances.
//
// Scoring runs in four steps:
//
//  1. Each speaker's consecutive turns are merged into one utterance as long
//     as no other speaker talks anywhere between the run's first start and
//     the candidate turn's end. Reference and hypothesis are each merged
//     against their own annotation.
//  2. Speakers are mapped one-to-one by maximum total overlap.
//  3. For every mapped pair, each reference utterance (chronologically) takes
//     the free hypothesis utterance it overlaps most. It counts towards
//     n_total, and is a mistake when unmatched or when IoU < eta.
//  4. Hypothesis utterances left without a reference partner are mistakes;
//     so is every utterance of an unmapped reference speaker (these are not
//     added to n_total, so cder can exceed 1).

#ifndef DIARSCORE_CDER_H_
#define DIARSCORE_CDER_H_

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "diarscore/errors.h"
#include "diarscore/timeline.h"

namespace diarscore {

struct CderConfig {
  // IoU threshold, strictly inside (0, 1).
  double eta = 0.5;
  // Also charge every utterance of a hypothesis speaker left out of the map.
  bool count_unmatched_hyp_speakers = false;
};

struct MergedUtterance {
  std::string speaker;
  Segment segment;
  // Number of raw turns folded into this utterance.
  std::size_t source_count = 1;

  friend bool operator==(const MergedUtterance &,
                         const MergedUtterance &) = default;
};

struct CderReport {
  std::size_t n_error = 0;
  std::size_t n_total = 0;
  std::size_t errors_unmatched_ref_speaker = 0;
  std::size_t errors_iou_below_eta = 0;
  std::size_t errors_unmatched_hyp_utterance = 0;
  // n_error / n_total; 0 while the report is undefined (n_total == 0).
  double cder = 0.0;
  // Mean of per-recording cder; only set on aggregates.
  std::optional<double> macro_cder;
  // Recordings pooled into an aggregate.
  std::size_t n_recordings = 1;

  bool defined() const { return n_total > 0; }

  friend bool operator==(const CderReport &, const CderReport &) = default;
};

// No reference utterance could be scored (no reference speaker was mapped).
// The partial counts are kept for reporting.
class UndefinedMetric : public Error {
 public:
  explicit UndefinedMetric(CderReport partial);
  const CderReport &partial() const { return partial_; }

 private:
  CderReport partial_;
};

// Throws InvalidConfig unless 0 < eta < 1.
void validate(const CderConfig &cfg);

using MergedTimeline = std::map<std::string, std::vector<MergedUtterance>>;

MergedTimeline merge_utterances(const Annotation &ann);

// All merged utterances ordered by (start, end, speaker).
std::vector<MergedUtterance> merged_sequence(const MergedTimeline &merged);

// IoU of two segments as an exact ratio of integer durations.
double iou(const Segment &a, const Segment &b);

using UtteranceMatch = std::pair<std::size_t, std::optional<std::size_t>>;

// Greedy one-to-one matching in reference order. Each reference utterance
// takes the free hypothesis utterance of maximal positive intersection,
// ties going to the earlier hypothesis start. Both lists must be
// chronological and pairwise disjoint.
std::vector<UtteranceMatch> match_utterances(
    std::span<const MergedUtterance> ref_utts,
    std::span<const MergedUtterance> hyp_utts);

// Always returns the counts; cder stays 0 when n_total == 0.
CderReport score_cder(const Annotation &ref, const Annotation &hyp,
                      const CderConfig &cfg = {});

// Like score_cder but throws UndefinedMetric when n_total == 0.
CderReport compute_cder(const Annotation &ref, const Annotation &hyp,
                        const CderConfig &cfg = {});

// Micro average over the defined reports, with the macro mean attached.
// Undefined reports are skipped. Throws EmptyInput when nothing is defined.
CderReport aggregate_cder(std::span<const CderReport> reports);

}  // namespace diarscore

#endif  // DIARSCORE_CDER_H_
