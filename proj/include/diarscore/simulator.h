// diarscore/simulator.h
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
// Synthetic two-party dialogs and a diarization-error injector, used to
// study how DER and CDER move together without real corpora.
//
// Every function is deterministic in its seeds. Random draws go through the
// standard library distributions, so outputs are reproducible run to run on
// one toolchain but may differ across standard library implementations.

#ifndef DIARSCORE_SIMULATOR_H_
#define DIARSCORE_SIMULATOR_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "diarscore/timeline.h"

namespace diarscore {

// Defaults match the segment statistics of a conversational two-party corpus:
// 30.8 minute sessions, 2.54 s mean segments within [0.09, 14.91] s.
struct DialogProfile {
  double duration_min = 30.8;
  double mean_segment_s = 2.54;
  double min_segment_s = 0.09;
  double max_segment_s = 14.91;
  // Log-space standard deviation of the segment duration log-normal.
  double segment_log_sigma = 0.8;
  // Mean silence between consecutive segments (exponential).
  double mean_gap_s = 0.4;
  // Probability that the next segment belongs to the other speaker.
  double turn_taking_rate = 0.6;
  // Probability that a speaker change starts before the previous segment ends.
  double overlap_prob = 0.1;
  std::uint64_t rng_seed = 0;
  std::string recording_id = "dialog";
};

struct ErrorProfile {
  double boundary_jitter_std_ms = 0.0;
  // Applies to segments shorter than 1 s.
  double short_segment_drop_prob = 0.0;
  double split_prob = 0.0;
  double merge_prob = 0.0;
  double confusion_prob = 0.0;
  std::uint64_t rng_seed = 0;
};

// Throws InvalidConfig on a non-positive duration or a probability outside
// [0, 1].
void validate(const DialogProfile &profile);
void validate(const ErrorProfile &profile);

// Two speakers, "A" and "B".
Annotation generate_dialog(const DialogProfile &profile);

// Applies boundary jitter, short-segment drops, splits, merges with the next
// turn and speaker confusions, in that order, then truncates any
// same-speaker overlap the edits created. An all-zero profile returns the
// input unchanged.
Annotation corrupt(const Annotation &ref, const ErrorProfile &profile);

// Profiles of increasing severity, from error-free (first) to `max_severity`
// (last).
std::vector<ErrorProfile> severity_grid(std::size_t n, std::uint64_t seed,
                                        double max_severity = 1.0);

struct StudyRow {
  std::size_t system_id;
  double der_collar025;
  double der_collar0;
  double cder;
};

struct StudyResult {
  std::vector<StudyRow> rows;
  // Pearson correlation of cder against der_collar0.
  double pearson_r;
};

// One fixed corpus of `n_dialogs` dialogs is corrupted once per system, with
// system i using error_grid[i % error_grid.size()]. Metrics are pooled over
// the corpus (micro average). Throws InvalidConfig when n_systems < 2 or the
// grid is empty.
StudyResult correlation_study(std::size_t n_systems,
                              const DialogProfile &dialog_profile,
                              std::span<const ErrorProfile> error_grid,
                              std::size_t n_dialogs = 4);

// Columns: system_id,der_collar025,der_collar0,cder.
std::string write_study_csv(const StudyResult &result);

// Throws InvalidConfig on mismatched or too short inputs; NaN when either
// series is constant.
double pearson(std::span<const double> x, std::span<const double> y);

}  // namespace diarscore

#endif  // DIARSCORE_SIMULATOR_H_
