// diarscore/cder.cc
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

#include "diarscore/cder.h"

#include <algorithm>
#include <cmath>
#include <tuple>

#include "diarscore/mapping.h"

namespace diarscore {

UndefinedMetric::UndefinedMetric(CderReport partial)
    : Error("CDER is undefined: no reference utterance was scored (" +
            std::to_string(partial.n_error) + " errors, 0 scored)"),
      partial_(std::move(partial)) {}

void validate(const CderConfig &cfg) {
  if (!(cfg.eta > 0.0 && cfg.eta < 1.0)) {
    throw InvalidConfig("eta must lie strictly between 0 and 1");
  }
}

MergedTimeline merge_utterances(const Annotation &ann) {
  MergedTimeline out;
  for (const std::string &speaker : ann.speakers()) {
    auto line = ann.timeline(speaker);
    auto &merged = out[speaker];
    std::size_t j = 0;
    while (j < line.size()) {
      const std::int64_t run_start = line[j].start_ms();
      std::int64_t run_end = line[j].end_ms();
      // [run_start, checked) is already known to be free of other speakers.
      std::int64_t checked = run_start;
      std::size_t k = j + 1;
      for (; k < line.size(); ++k) {
        if (ann.other_speaker_active(speaker, checked, line[k].end_ms())) {
          break;
        }
        checked = run_end = line[k].end_ms();
      }
      merged.push_back(
          MergedUtterance{speaker, Segment(run_start, run_end), k - j});
      j = k;
    }
  }
  return out;
}

std::vector<MergedUtterance> merged_sequence(const MergedTimeline &merged) {
  std::vector<MergedUtterance> out;
  for (const auto &[_, utts] : merged) {
    out.insert(out.end(), utts.begin(), utts.end());
  }
  std::sort(out.begin(), out.end(),
            [](const MergedUtterance &a, const MergedUtterance &b) {
              return std::tie(a.segment, a.speaker) <
                     std::tie(b.segment, b.speaker);
            });
  return out;
}

double iou(const Segment &a, const Segment &b) {
  return static_cast<double>(intersect(a, b).count()) /
         static_cast<double>(union_duration(a, b).count());
}

std::vector<UtteranceMatch> match_utterances(
    std::span<const MergedUtterance> ref_utts,
    std::span<const MergedUtterance> hyp_utts) {
  std::vector<UtteranceMatch> out;
  out.reserve(ref_utts.size());
  std::vector<char> taken(hyp_utts.size(), 0);
  for (std::size_t i = 0; i < ref_utts.size(); ++i) {
    const Segment &r = ref_utts[i].segment;
    auto first = std::upper_bound(
        hyp_utts.begin(), hyp_utts.end(), r.start_ms(),
        [](std::int64_t t, const MergedUtterance &h) {
          return t < h.segment.end_ms();
        });
    std::optional<std::size_t> best;
    std::int64_t best_overlap = 0;
    for (auto it = first;
         it != hyp_utts.end() && it->segment.start_ms() < r.end_ms(); ++it) {
      const auto j = static_cast<std::size_t>(it - hyp_utts.begin());
      if (taken[j]) continue;
      // Candidates arrive in start order, so strict > keeps the earlier one.
      const std::int64_t overlap = intersect(r, it->segment).count();
      if (overlap > best_overlap) {
        best_overlap = overlap;
        best = j;
      }
    }
    if (best) taken[*best] = 1;
    out.emplace_back(i, best);
  }
  return out;
}

CderReport score_cder(const Annotation &ref, const Annotation &hyp,
                      const CderConfig &cfg) {
  validate(cfg);
  const MergedTimeline ref_merged = merge_utterances(ref);
  const MergedTimeline hyp_merged = merge_utterances(hyp);
  const SpeakerMap map = match_speakers(ref, hyp);

  CderReport report;
  for (const std::string &r : map.unmatched_ref) {
    report.errors_unmatched_ref_speaker += ref_merged.at(r).size();
  }
  for (const auto &[r, h] : map.pairs) {
    const auto &ref_utts = ref_merged.at(r);
    const auto &hyp_utts = hyp_merged.at(h);
    std::vector<char> hyp_used(hyp_utts.size(), 0);
    for (const auto &[i, j] : match_utterances(ref_utts, hyp_utts)) {
      ++report.n_total;
      if (!j) {
        ++report.errors_iou_below_eta;
        continue;
      }
      hyp_used[*j] = 1;
      if (iou(ref_utts[i].segment, hyp_utts[*j].segment) < cfg.eta) {
        ++report.errors_iou_below_eta;
      }
    }
    report.errors_unmatched_hyp_utterance +=
        static_cast<std::size_t>(std::count(hyp_used.begin(), hyp_used.end(), 0));
  }
  if (cfg.count_unmatched_hyp_speakers) {
    for (const std::string &h : map.unmatched_hyp) {
      report.errors_unmatched_hyp_utterance += hyp_merged.at(h).size();
    }
  }
  report.n_error = report.errors_unmatched_ref_speaker +
                   report.errors_iou_below_eta +
                   report.errors_unmatched_hyp_utterance;
  if (report.n_total > 0) {
    report.cder = static_cast<double>(report.n_error) /
                  static_cast<double>(report.n_total);
  }
  return report;
}

CderReport compute_cder(const Annotation &ref, const Annotation &hyp,
                        const CderConfig &cfg) {
  CderReport report = score_cder(ref, hyp, cfg);
  if (!report.defined()) throw UndefinedMetric(report);
  return report;
}

CderReport aggregate_cder(std::span<const CderReport> reports) {
  CderReport sum;
  sum.n_recordings = 0;
  double macro = 0.0;
  for (const CderReport &r : reports) {
    if (!r.defined()) continue;
    sum.n_error += r.n_error;
    sum.n_total += r.n_total;
    sum.errors_unmatched_ref_speaker += r.errors_unmatched_ref_speaker;
    sum.errors_iou_below_eta += r.errors_iou_below_eta;
    sum.errors_unmatched_hyp_utterance += r.errors_unmatched_hyp_utterance;
    macro += r.cder;
    ++sum.n_recordings;
  }
  if (sum.n_recordings == 0) {
    throw EmptyInput("no defined CDER reports to aggregate");
  }
  sum.cder =
      static_cast<double>(sum.n_error) / static_cast<double>(sum.n_total);
  sum.macro_cder = macro / static_cast<double>(sum.n_recordings);
  return sum;
}

}  // namespace diarscore
