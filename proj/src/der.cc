// diarscore/der.cc
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

#include "diarscore/der.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "diarscore/errors.h"

namespace diarscore {

namespace {

struct Span {
  std::int64_t start;
  std::int64_t end;
};

// Sorts and coalesces; empty spans vanish.
std::vector<Span> union_of(std::vector<Span> spans) {
  std::sort(spans.begin(), spans.end(),
            [](const Span &a, const Span &b) { return a.start < b.start; });
  std::vector<Span> out;
  for (const Span &s : spans) {
    if (s.end <= s.start) continue;
    if (!out.empty() && s.start <= out.back().end) {
      out.back().end = std::max(out.back().end, s.end);
    } else {
      out.push_back(s);
    }
  }
  return out;
}

std::vector<Segment> to_segments(const std::vector<Span> &spans) {
  std::vector<Segment> out;
  out.reserve(spans.size());
  for (const Span &s : spans) out.emplace_back(s.start, s.end);
  return out;
}

int index_of(const std::vector<std::string> &sorted, std::string_view label) {
  auto it = std::lower_bound(sorted.begin(), sorted.end(), label);
  return static_cast<int>(it - sorted.begin());
}

double ratio(std::int64_t num, std::int64_t den) {
  return den > 0 ? static_cast<double>(num) / static_cast<double>(den) : 0.0;
}

}  // namespace

TimeMs collar_ms(const DerConfig &cfg) {
  if (!std::isfinite(cfg.collar_s) || cfg.collar_s < 0) {
    throw InvalidConfig("collar must be a non-negative number of seconds");
  }
  return TimeMs(static_cast<std::int64_t>(std::round(cfg.collar_s * 1000.0)));
}

std::vector<Segment> scoring_regions(const Annotation &ref, TimeMs collar,
                                     std::int64_t extent_end_ms) {
  const std::int64_t c = collar.count();
  std::vector<Span> excluded;
  if (c > 0) {
    excluded.reserve(ref.turns().size() * 2);
    for (const Turn &t : ref.turns()) {
      for (std::int64_t b : {t.segment.start_ms(), t.segment.end_ms()}) {
        excluded.push_back({std::max<std::int64_t>(0, b - c), b + c});
      }
    }
  }
  std::vector<Segment> out;
  std::int64_t cursor = 0;
  for (const Span &z : union_of(std::move(excluded))) {
    if (z.start >= extent_end_ms) break;
    if (z.start > cursor) out.emplace_back(cursor, z.start);
    cursor = std::max(cursor, z.end);
  }
  if (cursor < extent_end_ms) out.emplace_back(cursor, extent_end_ms);
  return out;
}

std::vector<Segment> scoring_regions(const Annotation &ref, TimeMs collar) {
  return scoring_regions(ref, collar, ref.end_ms());
}

std::vector<Segment> overlap_regions(const Annotation &ann) {
  std::vector<std::pair<std::int64_t, int>> events;
  events.reserve(ann.turns().size() * 2);
  for (const Turn &t : ann.turns()) {
    events.emplace_back(t.segment.start_ms(), +1);
    events.emplace_back(t.segment.end_ms(), -1);
  }
  std::sort(events.begin(), events.end());
  std::vector<Span> spans;
  int active = 0;
  for (std::size_t k = 0; k < events.size();) {
    const std::int64_t t = events[k].first;
    for (; k < events.size() && events[k].first == t; ++k) {
      active += events[k].second;
    }
    if (active >= 2 && k < events.size()) {
      spans.push_back({t, events[k].first});
    }
  }
  return to_segments(union_of(std::move(spans)));
}

std::vector<Segment> subtract_regions(std::span<const Segment> a,
                                      std::span<const Segment> b) {
  std::vector<Segment> out;
  std::size_t j = 0;
  for (const Segment &s : a) {
    std::int64_t cursor = s.start_ms();
    while (j < b.size() && b[j].end_ms() <= cursor) ++j;
    for (std::size_t k = j; k < b.size() && b[k].start_ms() < s.end_ms(); ++k) {
      if (b[k].start_ms() > cursor) out.emplace_back(cursor, b[k].start_ms());
      cursor = std::max(cursor, b[k].end_ms());
    }
    if (cursor < s.end_ms()) out.emplace_back(cursor, s.end_ms());
  }
  return out;
}

Annotation restrict_to(const Annotation &ann, std::span<const Segment> regions) {
  std::vector<Turn> turns;
  turns.reserve(ann.turns().size());
  for (const Turn &t : ann.turns()) {
    auto it = std::upper_bound(
        regions.begin(), regions.end(), t.segment.start_ms(),
        [](std::int64_t v, const Segment &r) { return v < r.end_ms(); });
    for (; it != regions.end() && it->start_ms() < t.segment.end_ms(); ++it) {
      std::int64_t lo = std::max(it->start_ms(), t.segment.start_ms());
      std::int64_t hi = std::min(it->end_ms(), t.segment.end_ms());
      if (lo < hi) turns.push_back(Turn{t.speaker, Segment(lo, hi), t.channel});
    }
  }
  return Annotation(ann.recording_id(), std::move(turns));
}

std::vector<Segment> der_scored_regions(const Annotation &ref,
                                        const Annotation &hyp,
                                        const DerConfig &cfg) {
  const std::int64_t extent = std::max(ref.end_ms(), hyp.end_ms());
  auto regions = scoring_regions(ref, collar_ms(cfg), extent);
  if (!cfg.score_overlap) {
    regions = subtract_regions(regions, overlap_regions(ref));
  }
  return regions;
}

DerReport der_with_map(const Annotation &ref, const Annotation &hyp,
                       const SpeakerMap &map) {
  const auto ref_labels = ref.speakers();
  const auto hyp_labels = hyp.speakers();
  std::vector<int> ref_to_hyp(ref_labels.size(), -1);
  std::vector<int> hyp_to_ref(hyp_labels.size(), -1);
  for (const auto &[r, h] : map.pairs) {
    auto ri = std::lower_bound(ref_labels.begin(), ref_labels.end(), r);
    auto hi = std::lower_bound(hyp_labels.begin(), hyp_labels.end(), h);
    if (ri == ref_labels.end() || *ri != r || hi == hyp_labels.end() ||
        *hi != h) {
      continue;
    }
    ref_to_hyp[ri - ref_labels.begin()] = static_cast<int>(hi - hyp_labels.begin());
    hyp_to_ref[hi - hyp_labels.begin()] = static_cast<int>(ri - ref_labels.begin());
  }

  struct Event {
    std::int64_t t;
    int id;
    bool is_ref;
    int delta;
  };
  std::vector<Event> events;
  events.reserve(2 * (ref.turns().size() + hyp.turns().size()));
  for (const Turn &t : ref.turns()) {
    int id = index_of(ref_labels, t.speaker);
    events.push_back({t.segment.start_ms(), id, true, +1});
    events.push_back({t.segment.end_ms(), id, true, -1});
  }
  for (const Turn &t : hyp.turns()) {
    int id = index_of(hyp_labels, t.speaker);
    events.push_back({t.segment.start_ms(), id, false, +1});
    events.push_back({t.segment.end_ms(), id, false, -1});
  }
  std::sort(events.begin(), events.end(),
            [](const Event &a, const Event &b) { return a.t < b.t; });

  // Per-speaker counts rather than flags so touching same-speaker turns can
  // be processed in any order within one instant.
  std::vector<int> ref_count(ref_labels.size(), 0);
  std::vector<int> hyp_count(hyp_labels.size(), 0);
  std::int64_t n_ref = 0, n_hyp = 0, n_correct = 0;
  std::int64_t miss = 0, fa = 0, error = 0, total = 0;

  for (std::size_t k = 0; k < events.size();) {
    const std::int64_t t = events[k].t;
    for (; k < events.size() && events[k].t == t; ++k) {
      const Event &e = events[k];
      auto &count = e.is_ref ? ref_count[e.id] : hyp_count[e.id];
      const int partner = e.is_ref ? ref_to_hyp[e.id] : hyp_to_ref[e.id];
      const bool partner_active =
          partner >= 0 &&
          (e.is_ref ? hyp_count[partner] : ref_count[partner]) > 0;
      const bool was_active = count > 0;
      count += e.delta;
      const bool is_active = count > 0;
      if (was_active == is_active) continue;
      const int step = is_active ? 1 : -1;
      (e.is_ref ? n_ref : n_hyp) += step;
      if (partner_active) n_correct += step;
    }
    if (k == events.size()) break;
    const std::int64_t len = events[k].t - t;
    miss += len * std::max<std::int64_t>(0, n_ref - n_hyp);
    fa += len * std::max<std::int64_t>(0, n_hyp - n_ref);
    error += len * (std::min(n_ref, n_hyp) - n_correct);
    total += len * n_ref;
  }

  DerReport report{TimeMs(miss), TimeMs(fa), TimeMs(error), TimeMs(total), 0.0};
  report.der = ratio(miss + fa + error, total);
  return report;
}

DerReport compute_der(const Annotation &ref, const Annotation &hyp,
                      const DerConfig &cfg) {
  if (ref.empty()) {
    throw EmptyReference("reference '" + ref.recording_id() + "' has no turns");
  }
  const auto regions = der_scored_regions(ref, hyp, cfg);
  const Annotation scored_ref = restrict_to(ref, regions);
  const Annotation scored_hyp = restrict_to(hyp, regions);
  DerReport report =
      der_with_map(scored_ref, scored_hyp, match_speakers(scored_ref, scored_hyp));
  if (report.total_ms.count() == 0) {
    throw EmptyReference("reference '" + ref.recording_id() +
                         "' has no scored speech");
  }
  return report;
}

DerReport aggregate_der(std::span<const DerReport> reports) {
  if (reports.empty()) throw EmptyInput("no DER reports to aggregate");
  DerReport sum;
  for (const DerReport &r : reports) {
    sum.miss_ms += r.miss_ms;
    sum.fa_ms += r.fa_ms;
    sum.error_ms += r.error_ms;
    sum.total_ms += r.total_ms;
  }
  if (sum.total_ms.count() == 0) {
    throw EmptyReference("aggregated reference has no scored speech");
  }
  sum.der = ratio(
      sum.miss_ms.count() + sum.fa_ms.count() + sum.error_ms.count(),
      sum.total_ms.count());
  return sum;
}

}  // namespace diarscore
