// diarscore/timeline.cc
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

#include "diarscore/timeline.h"

#include <algorithm>
#include <tuple>
#include <utility>

#include "diarscore/errors.h"

namespace diarscore {

SameSpeakerOverlap::SameSpeakerOverlap(std::string recording_id,
                                       std::string speaker,
                                       std::size_t line_no)
    : Error("overlapping turns of speaker '" + speaker + "' in recording '" +
            recording_id + "'" +
            (line_no ? " at line " + std::to_string(line_no) : "")),
      recording_id_(std::move(recording_id)),
      speaker_(std::move(speaker)),
      line_no_(line_no) {}

MalformedLine::MalformedLine(std::size_t line_no, std::string reason)
    : Error("line " + std::to_string(line_no) + ": " + reason),
      line_no_(line_no),
      reason_(std::move(reason)) {}

TimeMs::TimeMs(std::int64_t ms) : ms_(ms) {
  if (ms < 0) {
    throw InvalidSegment("negative time " + std::to_string(ms) + " ms");
  }
}

Segment::Segment(std::int64_t start_ms, std::int64_t end_ms)
    : start_(start_ms), end_(end_ms) {
  if (start_ms < 0 || start_ms >= end_ms) {
    throw InvalidSegment("invalid segment [" + std::to_string(start_ms) +
                         ", " + std::to_string(end_ms) + ")");
  }
}

Annotation::Annotation(std::string recording_id, std::vector<Turn> turns)
    : recording_id_(std::move(recording_id)), turns_(std::move(turns)) {
  std::sort(turns_.begin(), turns_.end(), [](const Turn &a, const Turn &b) {
    return std::tie(a.segment, a.speaker, a.channel) <
           std::tie(b.segment, b.speaker, b.channel);
  });
  for (const Turn &t : turns_) {
    if (t.speaker.empty()) {
      throw InvalidSegment("empty speaker label in recording '" +
                           recording_id_ + "'");
    }
    auto &line = by_speaker_[t.speaker];
    // turns_ is sorted by start, so each speaker's timeline is too.
    if (!line.empty() && line.back().end_ms() > t.segment.start_ms()) {
      throw SameSpeakerOverlap(recording_id_, t.speaker);
    }
    line.push_back(t.segment);
  }
}

std::vector<std::string> Annotation::speakers() const {
  std::vector<std::string> out;
  out.reserve(by_speaker_.size());
  for (const auto &[label, _] : by_speaker_) out.push_back(label);
  return out;
}

std::int64_t Annotation::end_ms() const {
  std::int64_t end = 0;
  for (const auto &[_, line] : by_speaker_) {
    end = std::max(end, line.back().end_ms());
  }
  return end;
}

std::span<const Segment> Annotation::timeline(std::string_view speaker) const {
  auto it = by_speaker_.find(speaker);
  if (it == by_speaker_.end()) return {};
  return it->second;
}

bool Annotation::other_speaker_active(std::string_view speaker,
                                      std::int64_t start_ms,
                                      std::int64_t end_ms) const {
  for (const auto &[label, line] : by_speaker_) {
    if (label != speaker && timeline_overlaps(line, start_ms, end_ms)) {
      return true;
    }
  }
  return false;
}

TimeMs intersect(const Segment &a, const Segment &b) {
  std::int64_t lo = std::max(a.start_ms(), b.start_ms());
  std::int64_t hi = std::min(a.end_ms(), b.end_ms());
  return TimeMs(std::max<std::int64_t>(0, hi - lo));
}

TimeMs union_duration(const Segment &a, const Segment &b) {
  return TimeMs(a.duration().count() + b.duration().count() -
                intersect(a, b).count());
}

std::vector<Segment> speaker_timeline(const Annotation &ann,
                                      std::string_view speaker) {
  auto line = ann.timeline(speaker);
  return {line.begin(), line.end()};
}

bool timeline_overlaps(std::span<const Segment> timeline, std::int64_t start_ms,
                       std::int64_t end_ms) {
  // Disjoint and sorted by start, so ends are sorted too.
  auto it = std::upper_bound(
      timeline.begin(), timeline.end(), start_ms,
      [](std::int64_t t, const Segment &s) { return t < s.end_ms(); });
  return it != timeline.end() && it->start_ms() < end_ms;
}

bool any_other_speaker_active(const Annotation &ann, std::string_view speaker,
                              const Segment &window) {
  return ann.other_speaker_active(speaker, window.start_ms(), window.end_ms());
}

std::int64_t timeline_intersection(std::span<const Segment> a,
                                   std::span<const Segment> b) {
  std::int64_t total = 0;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    total += intersect(a[i], b[j]).count();
    if (a[i].end_ms() < b[j].end_ms()) {
      ++i;
    } else {
      ++j;
    }
  }
  return total;
}

}  // namespace diarscore
