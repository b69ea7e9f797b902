// diarscore/timeline.h
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
// Integer-millisecond timeline model shared by every metric. Segments are
// half-open [start, end): touching segments share no time.

#ifndef DIARSCORE_TIMELINE_H_
#define DIARSCORE_TIMELINE_H_

#include <compare>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace diarscore {

// A non-negative point in time or duration, in whole milliseconds.
class TimeMs {
 public:
  constexpr TimeMs() = default;
  // Throws InvalidSegment when ms < 0.
  explicit TimeMs(std::int64_t ms);

  constexpr std::int64_t count() const { return ms_; }

  friend constexpr auto operator<=>(TimeMs, TimeMs) = default;
  friend TimeMs operator+(TimeMs a, TimeMs b) { return TimeMs(a.ms_ + b.ms_); }
  TimeMs &operator+=(TimeMs o) {
    ms_ += o.ms_;
    return *this;
  }

 private:
  std::int64_t ms_ = 0;
};

class Segment {
 public:
  // Throws InvalidSegment unless 0 <= start < end.
  Segment(std::int64_t start_ms, std::int64_t end_ms);
  Segment(TimeMs start, TimeMs end) : Segment(start.count(), end.count()) {}

  TimeMs start() const { return TimeMs(start_); }
  TimeMs end() const { return TimeMs(end_); }
  std::int64_t start_ms() const { return start_; }
  std::int64_t end_ms() const { return end_; }
  TimeMs duration() const { return TimeMs(end_ - start_); }

  friend auto operator<=>(const Segment &, const Segment &) = default;

 private:
  std::int64_t start_;
  std::int64_t end_;
};

struct Turn {
  std::string speaker;
  Segment segment;
  // RTTM channel column; carried through I/O, never scored.
  std::string channel = "1";

  friend bool operator==(const Turn &, const Turn &) = default;
};

// All turns of one recording, canonically sorted by (start, end, speaker).
// Turns of one speaker never overlap; turns of different speakers may.
class Annotation {
 public:
  Annotation() = default;
  // Throws InvalidSegment on an empty speaker label and SameSpeakerOverlap
  // when two turns of the same speaker share time.
  Annotation(std::string recording_id, std::vector<Turn> turns);

  const std::string &recording_id() const { return recording_id_; }
  const std::vector<Turn> &turns() const { return turns_; }
  bool empty() const { return turns_.empty(); }

  // Sorted, distinct speaker labels.
  std::vector<std::string> speakers() const;

  // One past the last instant covered by any turn; 0 for an empty annotation.
  std::int64_t end_ms() const;

  // Sorted by start; empty when the speaker is absent.
  std::span<const Segment> timeline(std::string_view speaker) const;

  // True iff a speaker other than `speaker` is active somewhere inside
  // [start_ms, end_ms).
  bool other_speaker_active(std::string_view speaker, std::int64_t start_ms,
                            std::int64_t end_ms) const;

  friend bool operator==(const Annotation &a, const Annotation &b) {
    return a.recording_id_ == b.recording_id_ && a.turns_ == b.turns_;
  }

 private:
  std::string recording_id_;
  std::vector<Turn> turns_;
  std::map<std::string, std::vector<Segment>, std::less<>> by_speaker_;
};

// Shared duration of two segments, 0 when they are disjoint or touching.
TimeMs intersect(const Segment &a, const Segment &b);

// Duration covered by either segment.
TimeMs union_duration(const Segment &a, const Segment &b);

std::vector<Segment> speaker_timeline(const Annotation &ann,
                                      std::string_view speaker);

// True iff some turn of a speaker other than `speaker` shares positive time
// with `window`.
bool any_other_speaker_active(const Annotation &ann, std::string_view speaker,
                              const Segment &window);

// True iff any segment of the sorted, pairwise-disjoint `timeline` shares
// positive time with [start_ms, end_ms). O(log n).
bool timeline_overlaps(std::span<const Segment> timeline, std::int64_t start_ms,
                       std::int64_t end_ms);

// Total shared duration between two sorted, pairwise-disjoint timelines.
std::int64_t timeline_intersection(std::span<const Segment> a,
                                   std::span<const Segment> b);

}  // namespace diarscore

#endif  // DIARSCORE_TIMELINE_H_
