// diarscore/simulator.cc
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

#include "diarscore/simulator.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <random>
#include <tuple>

#include "diarscore/cder.h"
#include "diarscore/der.h"
#include "diarscore/errors.h"

namespace diarscore {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) {
  return splitmix64(splitmix64(base) ^ (stream * 0x2545f4914f6cdd1dULL));
}

void check_probability(double p, const char *name) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw InvalidConfig(std::string(name) + " must lie in [0, 1]");
  }
}

void check_positive(double v, const char *name) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw InvalidConfig(std::string(name) + " must be positive");
  }
}

std::int64_t to_ms(double seconds) {
  return static_cast<std::int64_t>(std::llround(seconds * 1000.0));
}

bool coin(std::mt19937_64 &rng, double p) {
  // Skips the draw entirely for p == 0 so disabled stages consume no
  // randomness.
  if (p <= 0.0) return false;
  return std::bernoulli_distribution(p)(rng);
}

// Truncates the earlier of two overlapping same-speaker turns; turns that
// start together are fused.
std::vector<Turn> repair_same_speaker_overlap(std::vector<Turn> turns) {
  std::sort(turns.begin(), turns.end(), [](const Turn &a, const Turn &b) {
    return std::tie(a.speaker, a.segment) < std::tie(b.speaker, b.segment);
  });
  std::vector<Turn> out;
  out.reserve(turns.size());
  for (Turn &t : turns) {
    if (!out.empty() && out.back().speaker == t.speaker &&
        out.back().segment.end_ms() > t.segment.start_ms()) {
      Segment &prev = out.back().segment;
      if (prev.start_ms() < t.segment.start_ms()) {
        prev = Segment(prev.start_ms(), t.segment.start_ms());
      } else {
        prev = Segment(prev.start_ms(),
                       std::max(prev.end_ms(), t.segment.end_ms()));
        continue;
      }
    }
    out.push_back(std::move(t));
  }
  return out;
}

}  // namespace

void validate(const DialogProfile &p) {
  check_positive(p.duration_min, "duration_min");
  check_positive(p.mean_segment_s, "mean_segment_s");
  check_positive(p.min_segment_s, "min_segment_s");
  check_positive(p.max_segment_s, "max_segment_s");
  check_positive(p.mean_gap_s, "mean_gap_s");
  if (p.min_segment_s > p.max_segment_s) {
    throw InvalidConfig("min_segment_s exceeds max_segment_s");
  }
  if (!(p.segment_log_sigma >= 0.0)) {
    throw InvalidConfig("segment_log_sigma must be non-negative");
  }
  check_probability(p.turn_taking_rate, "turn_taking_rate");
  check_probability(p.overlap_prob, "overlap_prob");
}

void validate(const ErrorProfile &p) {
  if (!(p.boundary_jitter_std_ms >= 0.0)) {
    throw InvalidConfig("boundary_jitter_std_ms must be non-negative");
  }
  check_probability(p.short_segment_drop_prob, "short_segment_drop_prob");
  check_probability(p.split_prob, "split_prob");
  check_probability(p.merge_prob, "merge_prob");
  check_probability(p.confusion_prob, "confusion_prob");
}

Annotation generate_dialog(const DialogProfile &p) {
  validate(p);
  std::mt19937_64 rng(derive_seed(p.rng_seed, 0));
  const double sigma = p.segment_log_sigma;
  // Mean of the unclipped log-normal equals mean_segment_s.
  std::lognormal_distribution<double> seg_dist(
      std::log(p.mean_segment_s) - 0.5 * sigma * sigma, sigma);
  std::exponential_distribution<double> gap_dist(1.0 / p.mean_gap_s);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  const std::int64_t session_ms = to_ms(p.duration_min * 60.0);
  const std::int64_t min_ms = std::max<std::int64_t>(1, to_ms(p.min_segment_s));
  const std::int64_t max_ms = std::max(min_ms, to_ms(p.max_segment_s));
  const std::string labels[2] = {"A", "B"};

  std::vector<Turn> turns;
  std::int64_t last_end[2] = {0, 0};
  std::int64_t frontier = 0;  // latest end over both speakers
  std::int64_t prev_duration = 0;
  int speaker = 0;
  for (bool first = true;; first = false) {
    const std::int64_t duration =
        std::clamp(to_ms(seg_dist(rng)), min_ms, max_ms);
    std::int64_t start;
    if (first) {
      start = to_ms(gap_dist(rng));
    } else {
      const bool change = coin(rng, p.turn_taking_rate);
      if (change) speaker = 1 - speaker;
      if (change && coin(rng, p.overlap_prob)) {
        const double reach =
            0.5 * static_cast<double>(std::min(prev_duration, duration));
        start = frontier - static_cast<std::int64_t>(unit(rng) * reach);
      } else {
        start = frontier + std::max<std::int64_t>(10, to_ms(gap_dist(rng)));
      }
    }
    start = std::max(start, last_end[speaker]);
    const std::int64_t end = start + duration;
    if (end > session_ms) break;
    turns.push_back(Turn{labels[speaker], Segment(start, end)});
    last_end[speaker] = end;
    frontier = std::max(frontier, end);
    prev_duration = duration;
  }
  return Annotation(p.recording_id, std::move(turns));
}

Annotation corrupt(const Annotation &ref, const ErrorProfile &p) {
  validate(p);
  std::mt19937_64 rng(derive_seed(p.rng_seed, 1));
  std::vector<Turn> turns = ref.turns();

  if (p.boundary_jitter_std_ms > 0.0) {
    std::normal_distribution<double> jitter(0.0, p.boundary_jitter_std_ms);
    for (Turn &t : turns) {
      std::int64_t s = t.segment.start_ms() + std::llround(jitter(rng));
      std::int64_t e = t.segment.end_ms() + std::llround(jitter(rng));
      s = std::max<std::int64_t>(0, s);
      t.segment = Segment(s, std::max(e, s + 1));
    }
  }

  if (p.short_segment_drop_prob > 0.0) {
    std::vector<Turn> kept;
    for (Turn &t : turns) {
      if (t.segment.duration().count() < 1000 &&
          coin(rng, p.short_segment_drop_prob)) {
        continue;
      }
      kept.push_back(std::move(t));
    }
    turns = std::move(kept);
  }

  if (p.split_prob > 0.0) {
    std::vector<Turn> out;
    for (Turn &t : turns) {
      const std::int64_t s = t.segment.start_ms(), e = t.segment.end_ms();
      if (e - s >= 3 && coin(rng, p.split_prob)) {
        const std::int64_t cut =
            std::uniform_int_distribution<std::int64_t>(s + 1, e - 2)(rng);
        const std::int64_t gap = std::uniform_int_distribution<std::int64_t>(
            0, std::min<std::int64_t>(300, e - cut - 1))(rng);
        out.push_back(Turn{t.speaker, Segment(s, cut), t.channel});
        out.push_back(Turn{t.speaker, Segment(cut + gap, e), t.channel});
        continue;
      }
      out.push_back(std::move(t));
    }
    turns = std::move(out);
  }

  if (p.merge_prob > 0.0) {
    std::sort(turns.begin(), turns.end(), [](const Turn &a, const Turn &b) {
      return std::tie(a.segment, a.speaker) < std::tie(b.segment, b.speaker);
    });
    std::vector<Turn> out;
    for (std::size_t i = 0; i < turns.size(); ++i) {
      if (i + 1 < turns.size() && coin(rng, p.merge_prob)) {
        const Turn &next = turns[i + 1];
        out.push_back(Turn{turns[i].speaker,
                           Segment(turns[i].segment.start_ms(),
                                   std::max(turns[i].segment.end_ms(),
                                            next.segment.end_ms())),
                           turns[i].channel});
        ++i;
        continue;
      }
      out.push_back(turns[i]);
    }
    turns = std::move(out);
  }

  if (p.confusion_prob > 0.0) {
    const std::vector<std::string> labels = ref.speakers();
    for (Turn &t : turns) {
      if (labels.size() < 2 || !coin(rng, p.confusion_prob)) continue;
      std::vector<const std::string *> others;
      for (const std::string &l : labels) {
        if (l != t.speaker) others.push_back(&l);
      }
      t.speaker = *others[std::uniform_int_distribution<std::size_t>(
          0, others.size() - 1)(rng)];
    }
  }

  return Annotation(ref.recording_id(),
                    repair_same_speaker_overlap(std::move(turns)));
}

std::vector<ErrorProfile> severity_grid(std::size_t n, std::uint64_t seed,
                                        double max_severity) {
  std::vector<ErrorProfile> grid;
  grid.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double s =
        n > 1 ? max_severity * static_cast<double>(i) / static_cast<double>(n - 1)
              : 0.0;
    ErrorProfile e;
    e.boundary_jitter_std_ms = 300.0 * s;
    e.short_segment_drop_prob = std::min(1.0, 0.9 * s);
    e.split_prob = std::min(1.0, 0.3 * s);
    e.merge_prob = std::min(1.0, 0.3 * s);
    e.confusion_prob = std::min(1.0, 0.25 * s);
    e.rng_seed = derive_seed(seed, i);
    grid.push_back(e);
  }
  return grid;
}

StudyResult correlation_study(std::size_t n_systems,
                              const DialogProfile &dialog_profile,
                              std::span<const ErrorProfile> error_grid,
                              std::size_t n_dialogs) {
  if (n_systems < 2) throw InvalidConfig("a study needs at least 2 systems");
  if (error_grid.empty()) throw InvalidConfig("empty error grid");
  if (n_dialogs == 0) throw InvalidConfig("a study needs at least 1 dialog");

  std::vector<Annotation> corpus;
  for (std::size_t d = 0; d < n_dialogs; ++d) {
    DialogProfile p = dialog_profile;
    p.rng_seed = derive_seed(dialog_profile.rng_seed, d);
    char id[32];
    std::snprintf(id, sizeof(id), "dialog%03zu", d);
    p.recording_id = id;
    corpus.push_back(generate_dialog(p));
  }

  const DerConfig collar025{0.25, true};
  const DerConfig collar0{0.0, true};
  StudyResult result;
  std::vector<double> der0s, cders;
  for (std::size_t i = 0; i < n_systems; ++i) {
    std::vector<DerReport> d025, d0;
    std::vector<CderReport> c;
    for (std::size_t d = 0; d < corpus.size(); ++d) {
      ErrorProfile e = error_grid[i % error_grid.size()];
      e.rng_seed = derive_seed(e.rng_seed ^ derive_seed(i, 7), d);
      const Annotation hyp = corrupt(corpus[d], e);
      d025.push_back(compute_der(corpus[d], hyp, collar025));
      d0.push_back(compute_der(corpus[d], hyp, collar0));
      c.push_back(score_cder(corpus[d], hyp));
    }
    double cder = std::numeric_limits<double>::quiet_NaN();
    try {
      cder = aggregate_cder(c).cder;
    } catch (const EmptyInput &) {
    }
    result.rows.push_back(
        {i, aggregate_der(d025).der, aggregate_der(d0).der, cder});
    der0s.push_back(result.rows.back().der_collar0);
    cders.push_back(cder);
  }
  result.pearson_r = pearson(cders, der0s);
  return result;
}

std::string write_study_csv(const StudyResult &result) {
  std::string out = "system_id,der_collar025,der_collar0,cder\n";
  char line[128];
  for (const StudyRow &r : result.rows) {
    std::snprintf(line, sizeof(line), "%zu,%.6f,%.6f,%.6f\n", r.system_id,
                  r.der_collar025, r.der_collar0, r.cder);
    out += line;
  }
  return out;
}

double pearson(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw InvalidConfig("pearson needs two equally long series of >= 2 points");
  }
  const double n = static_cast<double>(x.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0 || syy == 0) return std::numeric_limits<double>::quiet_NaN();
  return sxy / std::sqrt(sxx * syy);
}

}  // namespace diarscore
