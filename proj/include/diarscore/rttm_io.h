// diarscore/rttm_io.h
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
// RTTM speaker files. Each SPEAKER record has exactly ten fields:
//
//   SPEAKER <file-id> <channel> <onset> <duration> <NA> <NA> <speaker> <NA> <NA>
//
// Onset and duration are decimal seconds; they are converted to whole
// milliseconds rounding half away from zero. Blank lines and lines starting
// with ';' or '#' are ignored, as are records of other types (SPKR-INFO,
// NOSCORE, ...).

#ifndef DIARSCORE_RTTM_IO_H_
#define DIARSCORE_RTTM_IO_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "diarscore/timeline.h"

namespace diarscore {

struct RttmRecord {
  std::string file_id;
  std::string channel;
  std::int64_t onset_ms;
  std::int64_t duration_ms;
  std::string speaker;
  std::size_t line_no;
};

// Decimal seconds ("2.5", "0.0045", "1e-3") to milliseconds, rounding half
// away from zero. Locale independent. nullopt when `text` is not a number.
std::optional<std::int64_t> parse_seconds(std::string_view text);

// Milliseconds as seconds with exactly three decimals ("2.500").
std::string format_seconds(std::int64_t ms);

// Throws MalformedLine.
std::vector<RttmRecord> parse_rttm_records(std::string_view text);

// Groups records by file id into canonical annotations sorted by recording id.
// Throws SameSpeakerOverlap, naming the line of the offending record.
std::vector<Annotation> build_annotations(std::span<const RttmRecord> records);

// parse_rttm_records followed by build_annotations.
std::vector<Annotation> parse_rttm(std::string_view text);

// One SPEAKER line per turn, lines sorted by (file id, start, speaker).
std::string write_rttm(std::span<const Annotation> anns);

// Folds overlapping turns of the same speaker into one turn spanning both.
// This is the explicit repair for input that Annotation refuses to build;
// touching turns are left alone.
std::vector<Turn> normalize_turns(std::vector<Turn> turns);

}  // namespace diarscore

#endif  // DIARSCORE_RTTM_IO_H_
