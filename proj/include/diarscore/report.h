// diarscore/report.h
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

#ifndef DIARSCORE_REPORT_H_
#define DIARSCORE_REPORT_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "diarscore/cder.h"
#include "diarscore/der.h"

namespace diarscore {

inline constexpr std::string_view kOverallId = "OVERALL";

struct RecordingScore {
  std::string recording_id;
  std::optional<DerReport> der;
  // Present but possibly undefined (n_total == 0).
  std::optional<CderReport> cder;
};

struct ScoreSummary {
  // Sorted by recording id.
  std::vector<RecordingScore> recordings;
  RecordingScore overall;
  // Recordings whose CDER was undefined and left out of the aggregate.
  std::vector<std::string> cder_skipped;
};

// Sorts the recordings and aggregates them. Throws EmptyReport when
// `recordings` is empty.
ScoreSummary summarize(std::vector<RecordingScore> recordings);

enum class ReportFormat { kJson, kCsv, kText };

// Returns nullopt for an unknown name.
std::optional<ReportFormat> parse_report_format(std::string_view name);

// CSV header:
//   recording_id,der,miss,fa,error,total,cder,n_error,n_total
// Ratios carry 4 decimals and durations are seconds with 3 decimals. Metrics
// that were not computed, and undefined CDER values, are left empty (null in
// JSON). The OVERALL row always comes last; per-recording rows are written
// only when `per_file` is set. Throws EmptyReport on an empty summary.
std::string write_report(const ScoreSummary &summary, ReportFormat format,
                         bool per_file = true);

}  // namespace diarscore

#endif  // DIARSCORE_REPORT_H_
