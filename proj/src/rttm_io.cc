// diarscore/rttm_io.cc
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

#include "diarscore/rttm_io.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <functional>
#include <map>
#include <tuple>
#include <utility>

#include "diarscore/errors.h"

namespace diarscore {

namespace {

constexpr std::size_t kRttmFields = 10;

bool is_digit(char c) { return c >= '0' && c <= '9'; }

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

// Exact path for plain decimals; avoids binary floating point entirely.
std::optional<std::int64_t> parse_plain_decimal(std::string_view text) {
  bool negative = false;
  std::size_t i = 0;
  if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
    negative = text[i] == '-';
    ++i;
  }
  std::int64_t whole = 0;
  std::size_t int_digits = 0;
  while (i < text.size() && is_digit(text[i])) {
    if (++int_digits > 12) return std::nullopt;
    whole = whole * 10 + (text[i] - '0');
    ++i;
  }
  std::int64_t frac = 0;
  std::size_t frac_digits = 0;
  bool round_up = false;
  if (i < text.size() && text[i] == '.') {
    ++i;
    while (i < text.size() && is_digit(text[i])) {
      if (frac_digits < 3) {
        frac = frac * 10 + (text[i] - '0');
      } else if (frac_digits == 3) {
        // Any later digits only push the value further past the half.
        round_up = text[i] >= '5';
      }
      ++frac_digits;
      ++i;
    }
  }
  if (i != text.size() || int_digits + frac_digits == 0) return std::nullopt;
  for (std::size_t k = std::min<std::size_t>(frac_digits, 3); k < 3; ++k) {
    frac *= 10;
  }
  std::int64_t ms = whole * 1000 + frac + (round_up ? 1 : 0);
  return negative ? -ms : ms;
}

}  // namespace

std::optional<std::int64_t> parse_seconds(std::string_view text) {
  if (text.empty()) return std::nullopt;
  if (text.find_first_of("eE") == std::string_view::npos) {
    return parse_plain_decimal(text);
  }
  if (text.front() == '+') text.remove_prefix(1);
  double seconds = 0;
  auto [ptr, ec] =
      std::from_chars(text.data(), text.data() + text.size(), seconds);
  if (ec != std::errc() || ptr != text.data() + text.size() ||
      !std::isfinite(seconds) || std::fabs(seconds) > 1e12) {
    return std::nullopt;
  }
  // std::round rounds half away from zero.
  return static_cast<std::int64_t>(std::round(seconds * 1000.0));
}

std::string format_seconds(std::int64_t ms) {
  std::string frac = std::to_string(ms % 1000);
  return std::to_string(ms / 1000) + "." + std::string(3 - frac.size(), '0') +
         frac;
}

std::vector<RttmRecord> parse_rttm_records(std::string_view text) {
  std::vector<RttmRecord> records;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

    auto fields = split_fields(line);
    if (fields.empty() || fields[0].front() == ';' || fields[0].front() == '#') {
      continue;
    }
    if (fields[0] != "SPEAKER") continue;
    if (fields.size() != kRttmFields) {
      throw MalformedLine(line_no, "expected " + std::to_string(kRttmFields) +
                                       " fields, found " +
                                       std::to_string(fields.size()));
    }
    auto onset = parse_seconds(fields[3]);
    if (!onset) {
      throw MalformedLine(line_no,
                          "non-numeric onset '" + std::string(fields[3]) + "'");
    }
    auto duration = parse_seconds(fields[4]);
    if (!duration) {
      throw MalformedLine(line_no, "non-numeric duration '" +
                                       std::string(fields[4]) + "'");
    }
    if (*onset < 0) {
      throw MalformedLine(line_no, "negative onset");
    }
    if (*duration <= 0) {
      throw MalformedLine(line_no, "non-positive duration '" +
                                       std::string(fields[4]) +
                                       "' (after rounding to milliseconds)");
    }
    records.push_back(RttmRecord{std::string(fields[1]), std::string(fields[2]),
                                 *onset, *duration, std::string(fields[7]),
                                 line_no});
  }
  return records;
}

std::vector<Annotation> build_annotations(std::span<const RttmRecord> records) {
  std::map<std::string, std::vector<const RttmRecord *>> groups;
  for (const RttmRecord &r : records) groups[r.file_id].push_back(&r);

  std::vector<Annotation> out;
  out.reserve(groups.size());
  for (auto &[file_id, group] : groups) {
    std::vector<Turn> turns;
    turns.reserve(group.size());
    for (const RttmRecord *r : group) {
      turns.push_back(Turn{r->speaker,
                           Segment(r->onset_ms, r->onset_ms + r->duration_ms),
                           r->channel});
    }
    try {
      out.emplace_back(file_id, std::move(turns));
    } catch (const SameSpeakerOverlap &e) {
      // Locate the later of the two clashing records for the message.
      std::vector<const RttmRecord *> mine;
      for (const RttmRecord *r : group) {
        if (r->speaker == e.speaker()) mine.push_back(r);
      }
      std::sort(mine.begin(), mine.end(), [](auto *a, auto *b) {
        return std::tie(a->onset_ms, a->duration_ms) <
               std::tie(b->onset_ms, b->duration_ms);
      });
      std::size_t line_no = 0;
      for (std::size_t k = 1; k < mine.size(); ++k) {
        if (mine[k - 1]->onset_ms + mine[k - 1]->duration_ms >
            mine[k]->onset_ms) {
          line_no = std::max(mine[k - 1]->line_no, mine[k]->line_no);
          break;
        }
      }
      throw SameSpeakerOverlap(file_id, e.speaker(), line_no);
    }
  }
  return out;
}

std::vector<Annotation> parse_rttm(std::string_view text) {
  return build_annotations(parse_rttm_records(text));
}

std::string write_rttm(std::span<const Annotation> anns) {
  std::vector<const Annotation *> sorted;
  for (const Annotation &a : anns) sorted.push_back(&a);
  std::stable_sort(sorted.begin(), sorted.end(), [](auto *a, auto *b) {
    return a->recording_id() < b->recording_id();
  });

  std::string out;
  for (const Annotation *ann : sorted) {
    std::vector<const Turn *> turns;
    for (const Turn &t : ann->turns()) turns.push_back(&t);
    std::sort(turns.begin(), turns.end(), [](auto *a, auto *b) {
      return std::make_tuple(a->segment.start_ms(), std::cref(a->speaker),
                             a->segment.end_ms()) <
             std::make_tuple(b->segment.start_ms(), std::cref(b->speaker),
                             b->segment.end_ms());
    });
    for (const Turn *t : turns) {
      out += "SPEAKER ";
      out += ann->recording_id();
      out += ' ';
      out += t->channel;
      out += ' ';
      out += format_seconds(t->segment.start_ms());
      out += ' ';
      out += format_seconds(t->segment.duration().count());
      out += " <NA> <NA> ";
      out += t->speaker;
      out += " <NA> <NA>\n";
    }
  }
  return out;
}

std::vector<Turn> normalize_turns(std::vector<Turn> turns) {
  std::sort(turns.begin(), turns.end(), [](const Turn &a, const Turn &b) {
    return std::tie(a.speaker, a.segment) < std::tie(b.speaker, b.segment);
  });
  std::vector<Turn> out;
  out.reserve(turns.size());
  for (Turn &t : turns) {
    if (!out.empty() && out.back().speaker == t.speaker &&
        t.segment.start_ms() < out.back().segment.end_ms()) {
      Segment &prev = out.back().segment;
      prev = Segment(prev.start_ms(),
                     std::max(prev.end_ms(), t.segment.end_ms()));
      continue;
    }
    out.push_back(std::move(t));
  }
  return out;
}

}  // namespace diarscore
