// diarscore/report.cc
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

#include "diarscore/report.h"

#include <algorithm>
#include <cstdio>

#include "diarscore/errors.h"
#include "diarscore/rttm_io.h"
#include "json.hpp"

namespace diarscore {

namespace {

using Json = nlohmann::ordered_json;

std::string fixed4(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.4f", v);
  return buf;
}

std::optional<double> cder_value(const RecordingScore &s) {
  if (!s.cder || !s.cder->defined()) return std::nullopt;
  return s.cder->cder;
}

std::vector<const RecordingScore *> rows_of(const ScoreSummary &summary,
                                            bool per_file) {
  std::vector<const RecordingScore *> rows;
  if (per_file) {
    for (const RecordingScore &r : summary.recordings) rows.push_back(&r);
  }
  rows.push_back(&summary.overall);
  return rows;
}

std::vector<std::string> csv_cells(const RecordingScore &s) {
  std::vector<std::string> cells{s.recording_id};
  if (s.der) {
    cells.push_back(fixed4(s.der->der));
    cells.push_back(format_seconds(s.der->miss_ms.count()));
    cells.push_back(format_seconds(s.der->fa_ms.count()));
    cells.push_back(format_seconds(s.der->error_ms.count()));
    cells.push_back(format_seconds(s.der->total_ms.count()));
  } else {
    cells.insert(cells.end(), 5, "");
  }
  if (s.cder) {
    auto v = cder_value(s);
    cells.push_back(v ? fixed4(*v) : "");
    cells.push_back(std::to_string(s.cder->n_error));
    cells.push_back(std::to_string(s.cder->n_total));
  } else {
    cells.insert(cells.end(), 3, "");
  }
  return cells;
}

Json json_row(const RecordingScore &s) {
  Json row;
  row["recording_id"] = s.recording_id;
  if (s.der) {
    row["der"] = s.der->der;
    row["miss"] = s.der->miss_ms.count() / 1000.0;
    row["fa"] = s.der->fa_ms.count() / 1000.0;
    row["error"] = s.der->error_ms.count() / 1000.0;
    row["total"] = s.der->total_ms.count() / 1000.0;
  } else {
    for (const char *k : {"der", "miss", "fa", "error", "total"}) row[k] = nullptr;
  }
  if (s.cder) {
    auto v = cder_value(s);
    row["cder"] = v ? Json(*v) : Json(nullptr);
    row["n_error"] = s.cder->n_error;
    row["n_total"] = s.cder->n_total;
    row["errors_unmatched_ref_speaker"] = s.cder->errors_unmatched_ref_speaker;
    row["errors_iou_below_eta"] = s.cder->errors_iou_below_eta;
    row["errors_unmatched_hyp_utterance"] =
        s.cder->errors_unmatched_hyp_utterance;
    if (s.cder->macro_cder) row["cder_macro"] = *s.cder->macro_cder;
  } else {
    for (const char *k : {"cder", "n_error", "n_total"}) row[k] = nullptr;
  }
  return row;
}

std::string write_csv(const ScoreSummary &summary, bool per_file) {
  std::string out = "recording_id,der,miss,fa,error,total,cder,n_error,n_total\n";
  for (const RecordingScore *s : rows_of(summary, per_file)) {
    auto cells = csv_cells(*s);
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out += ',';
      out += cells[i];
    }
    out += '\n';
  }
  return out;
}

std::string write_json(const ScoreSummary &summary, bool per_file) {
  Json doc;
  doc["recordings"] = Json::array();
  if (per_file) {
    for (const RecordingScore &r : summary.recordings) {
      doc["recordings"].push_back(json_row(r));
    }
  }
  doc["overall"] = json_row(summary.overall);
  doc["cder_skipped"] = summary.cder_skipped;
  return doc.dump(2) + "\n";
}

std::string write_text(const ScoreSummary &summary, bool per_file) {
  const std::vector<std::string> header{"recording", "DER",   "MISS(s)",
                                        "FA(s)",     "ERR(s)", "TOTAL(s)",
                                        "CDER",      "N_ERR", "N_TOTAL"};
  std::vector<std::vector<std::string>> table{header};
  for (const RecordingScore *s : rows_of(summary, per_file)) {
    auto cells = csv_cells(*s);
    if (s->cder && !s->cder->defined()) cells[6] = "undefined";
    for (auto &c : cells) {
      if (c.empty()) c = "-";
    }
    table.push_back(std::move(cells));
  }
  std::vector<std::size_t> width(header.size(), 0);
  for (const auto &row : table) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      width[i] = std::max(width[i], row[i].size());
    }
  }
  std::string out;
  for (std::size_t r = 0; r < table.size(); ++r) {
    for (std::size_t i = 0; i < table[r].size(); ++i) {
      const std::string &c = table[r][i];
      std::string pad(width[i] - c.size(), ' ');
      // Label column left-aligned, numbers right-aligned.
      out += i == 0 ? c + pad : "  " + pad + c;
    }
    out += '\n';
  }
  if (!summary.cder_skipped.empty()) {
    out += "CDER undefined (skipped in OVERALL):";
    for (const auto &id : summary.cder_skipped) out += " " + id;
    out += '\n';
  }
  if (summary.overall.cder && summary.overall.cder->macro_cder) {
    out += "CDER macro average: " + fixed4(*summary.overall.cder->macro_cder) +
           '\n';
  }
  return out;
}

}  // namespace

ScoreSummary summarize(std::vector<RecordingScore> recordings) {
  if (recordings.empty()) throw EmptyReport("no recordings to report");
  std::sort(recordings.begin(), recordings.end(),
            [](const RecordingScore &a, const RecordingScore &b) {
              return a.recording_id < b.recording_id;
            });
  ScoreSummary summary;
  summary.overall.recording_id = std::string(kOverallId);

  std::vector<DerReport> ders;
  std::vector<CderReport> cders;
  bool any_cder = false;
  CderReport undefined_sum;
  undefined_sum.n_recordings = 0;
  for (const RecordingScore &r : recordings) {
    if (r.der) ders.push_back(*r.der);
    if (r.cder) {
      any_cder = true;
      if (r.cder->defined()) {
        cders.push_back(*r.cder);
      } else {
        summary.cder_skipped.push_back(r.recording_id);
        undefined_sum.n_error += r.cder->n_error;
        undefined_sum.errors_unmatched_ref_speaker +=
            r.cder->errors_unmatched_ref_speaker;
        undefined_sum.errors_unmatched_hyp_utterance +=
            r.cder->errors_unmatched_hyp_utterance;
      }
    }
  }
  if (!ders.empty()) summary.overall.der = aggregate_der(ders);
  if (!cders.empty()) {
    summary.overall.cder = aggregate_cder(cders);
  } else if (any_cder) {
    summary.overall.cder = undefined_sum;
  }
  summary.recordings = std::move(recordings);
  return summary;
}

std::optional<ReportFormat> parse_report_format(std::string_view name) {
  if (name == "json") return ReportFormat::kJson;
  if (name == "csv") return ReportFormat::kCsv;
  if (name == "text") return ReportFormat::kText;
  return std::nullopt;
}

std::string write_report(const ScoreSummary &summary, ReportFormat format,
                         bool per_file) {
  if (summary.recordings.empty()) throw EmptyReport("no recordings to report");
  switch (format) {
    case ReportFormat::kJson:
      return write_json(summary, per_file);
    case ReportFormat::kCsv:
      return write_csv(summary, per_file);
    case ReportFormat::kText:
      return write_text(summary, per_file);
  }
  return {};
}

}  // namespace diarscore
