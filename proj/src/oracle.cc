// diarscore/oracle.cc
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

#include "diarscore/oracle.h"

#include <algorithm>
#include <bit>

#include "diarscore/errors.h"

namespace diarscore {

namespace {

// Turns of every speaker, rebuilt from the instants where `keep` is set.
Annotation grid_to_annotation(const std::string &recording_id,
                              const GridTimeline &grid,
                              const std::vector<char> &keep) {
  std::vector<Turn> turns;
  const auto extent = static_cast<std::int64_t>(grid.active.size());
  for (std::size_t k = 0; k < grid.labels.size(); ++k) {
    const std::uint64_t bit = std::uint64_t{1} << k;
    std::int64_t run_start = -1;
    for (std::int64_t t = 0; t <= extent; ++t) {
      const bool on = t < extent && keep[t] && (grid.active[t] & bit);
      if (on && run_start < 0) run_start = t;
      if (!on && run_start >= 0) {
        turns.push_back(Turn{grid.labels[k], Segment(run_start, t)});
        run_start = -1;
      }
    }
  }
  return Annotation(recording_id, std::move(turns));
}

std::size_t label_index(const std::vector<std::string> &labels,
                        std::string_view label) {
  return static_cast<std::size_t>(
      std::find(labels.begin(), labels.end(), label) - labels.begin());
}

}  // namespace

GridTimeline GridTimeline::paint(const Annotation &ann, std::int64_t extent_ms) {
  if (extent_ms > kMaxGridExtentMs) {
    throw ExtentTooLarge("grid extent of " + std::to_string(extent_ms) +
                         " ms exceeds the 4 hour guard");
  }
  GridTimeline grid;
  grid.labels = ann.speakers();
  if (grid.labels.size() > kMaxGridSpeakers) {
    throw ExtentTooLarge("grid supports at most 64 speakers");
  }
  grid.active.assign(static_cast<std::size_t>(extent_ms), 0);
  for (const Turn &turn : ann.turns()) {
    const std::uint64_t bit = std::uint64_t{1}
                              << label_index(grid.labels, turn.speaker);
    for (std::int64_t t = turn.segment.start_ms();
         t < std::min(turn.segment.end_ms(), extent_ms); ++t) {
      grid.active[t] |= bit;
    }
  }
  return grid;
}

DerReport grid_der(const Annotation &ref, const Annotation &hyp,
                   const DerConfig &cfg) {
  const std::int64_t extent = std::max(ref.end_ms(), hyp.end_ms());
  const GridTimeline ref_grid = GridTimeline::paint(ref, extent);
  const GridTimeline hyp_grid = GridTimeline::paint(hyp, extent);

  // An instant is scored unless it lies within the collar of a reference
  // boundary, i.e. b - collar <= t < b + collar.
  const std::int64_t collar = collar_ms(cfg).count();
  std::vector<char> scored(static_cast<std::size_t>(extent), 1);
  for (const Turn &turn : ref.turns()) {
    for (std::int64_t b : {turn.segment.start_ms(), turn.segment.end_ms()}) {
      for (std::int64_t t = std::max<std::int64_t>(0, b - collar);
           t < std::min(extent, b + collar); ++t) {
        scored[t] = 0;
      }
    }
  }
  if (!cfg.score_overlap) {
    for (std::int64_t t = 0; t < extent; ++t) {
      if (std::popcount(ref_grid.active[t]) >= 2) scored[t] = 0;
    }
  }

  const SpeakerMap map =
      match_speakers(grid_to_annotation(ref.recording_id(), ref_grid, scored),
                     grid_to_annotation(hyp.recording_id(), hyp_grid, scored));
  // hyp bit -> mapped ref bit
  std::vector<std::uint64_t> hyp_bit_to_ref(hyp_grid.labels.size(), 0);
  for (const auto &[r, h] : map.pairs) {
    hyp_bit_to_ref[label_index(hyp_grid.labels, h)] =
        std::uint64_t{1} << label_index(ref_grid.labels, r);
  }

  std::int64_t miss = 0, fa = 0, error = 0, total = 0;
  for (std::int64_t t = 0; t < extent; ++t) {
    if (!scored[t]) continue;
    const std::uint64_t r = ref_grid.active[t];
    const std::uint64_t h = hyp_grid.active[t];
    std::uint64_t h_as_ref = 0;
    for (std::size_t k = 0; k < hyp_grid.labels.size(); ++k) {
      if (h & (std::uint64_t{1} << k)) h_as_ref |= hyp_bit_to_ref[k];
    }
    const std::int64_t n_ref = std::popcount(r);
    const std::int64_t n_hyp = std::popcount(h);
    const std::int64_t n_correct = std::popcount(r & h_as_ref);
    miss += std::max<std::int64_t>(0, n_ref - n_hyp);
    fa += std::max<std::int64_t>(0, n_hyp - n_ref);
    error += std::min(n_ref, n_hyp) - n_correct;
    total += n_ref;
  }
  if (total == 0) {
    throw EmptyReference("reference '" + ref.recording_id() +
                         "' has no scored instant");
  }
  DerReport report{TimeMs(miss), TimeMs(fa), TimeMs(error), TimeMs(total), 0.0};
  report.der = static_cast<double>(miss + fa + error) /
               static_cast<double>(total);
  return report;
}

OverlapMatrix grid_overlap_matrix(const Annotation &ref, const Annotation &hyp) {
  const std::int64_t extent = std::max(ref.end_ms(), hyp.end_ms());
  const GridTimeline r = GridTimeline::paint(ref, extent);
  const GridTimeline h = GridTimeline::paint(hyp, extent);
  OverlapMatrix m{r.labels, h.labels,
                  std::vector<std::int64_t>(r.labels.size() * h.labels.size())};
  for (std::int64_t t = 0; t < extent; ++t) {
    for (std::size_t i = 0; i < r.labels.size(); ++i) {
      if (!(r.active[t] >> i & 1)) continue;
      for (std::size_t j = 0; j < h.labels.size(); ++j) {
        if (h.active[t] >> j & 1) ++m.ms[i * h.labels.size() + j];
      }
    }
  }
  return m;
}

std::vector<UtteranceMatch> exhaustive_cder_match(
    std::span<const MergedUtterance> ref_utts,
    std::span<const MergedUtterance> hyp_utts) {
  if (ref_utts.size() > kMaxExhaustiveUtterances ||
      hyp_utts.size() > kMaxExhaustiveUtterances) {
    throw TooManyUtterances("exhaustive matching is limited to 8 utterances");
  }
  const std::size_t n_ref = ref_utts.size(), n_hyp = hyp_utts.size();
  const std::size_t none = n_hyp;
  std::vector<std::int64_t> w(n_ref * n_hyp);
  for (std::size_t i = 0; i < n_ref; ++i) {
    for (std::size_t j = 0; j < n_hyp; ++j) {
      w[i * n_hyp + j] = intersect(ref_utts[i].segment, hyp_utts[j].segment).count();
    }
  }

  std::vector<std::size_t> current(n_ref, none), best(n_ref, none);
  std::vector<char> used(n_hyp, 0);
  std::int64_t best_total = -1;
  // Depth-first in lexicographic order with `none` last: the first vector to
  // reach a given total is the smallest one reaching it.
  auto search = [&](auto &&self, std::size_t i, std::int64_t total) -> void {
    if (i == n_ref) {
      if (total > best_total) {
        best_total = total;
        best = current;
      }
      return;
    }
    for (std::size_t j = 0; j < n_hyp; ++j) {
      if (used[j] || w[i * n_hyp + j] <= 0) continue;
      used[j] = 1;
      current[i] = j;
      self(self, i + 1, total + w[i * n_hyp + j]);
      used[j] = 0;
    }
    current[i] = none;
    self(self, i + 1, total);
  };
  search(search, 0, 0);

  std::vector<UtteranceMatch> out;
  for (std::size_t i = 0; i < n_ref; ++i) {
    out.emplace_back(i, best[i] == none ? std::nullopt
                                        : std::optional<std::size_t>(best[i]));
  }
  return out;
}

std::int64_t matched_intersection(std::span<const MergedUtterance> ref_utts,
                                  std::span<const MergedUtterance> hyp_utts,
                                  std::span<const UtteranceMatch> matches) {
  std::int64_t total = 0;
  for (const auto &[i, j] : matches) {
    if (j) total += intersect(ref_utts[i].segment, hyp_utts[*j].segment).count();
  }
  return total;
}

}  // namespace diarscore
