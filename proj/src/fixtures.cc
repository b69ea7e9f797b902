// diarscore/fixtures.cc
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

#include "diarscore/fixtures.h"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "diarscore/cder.h"
#include "diarscore/der.h"
#include "diarscore/mapping.h"
#include "diarscore/oracle.h"
#include "diarscore/rttm_io.h"
#include "json.hpp"

namespace diarscore {

namespace {

namespace fs = std::filesystem;
using Json = nlohmann::json;

std::string slurp(const fs::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string der_string(const DerReport &r) {
  return "miss=" + std::to_string(r.miss_ms.count()) +
         " fa=" + std::to_string(r.fa_ms.count()) +
         " error=" + std::to_string(r.error_ms.count()) +
         " total=" + std::to_string(r.total_ms.count());
}

bool der_matches(const DerReport &r, const Json &want) {
  return r.miss_ms.count() == want.at("miss_ms").get<std::int64_t>() &&
         r.fa_ms.count() == want.at("fa_ms").get<std::int64_t>() &&
         r.error_ms.count() == want.at("error_ms").get<std::int64_t>() &&
         r.total_ms.count() == want.at("total_ms").get<std::int64_t>();
}

// CDER counts with utterances paired by the exhaustive oracle instead of the
// greedy matcher.
CderReport exhaustive_cder(const Annotation &ref, const Annotation &hyp,
                           const CderConfig &cfg) {
  const MergedTimeline rm = merge_utterances(ref);
  const MergedTimeline hm = merge_utterances(hyp);
  const SpeakerMap map = match_speakers(ref, hyp);
  CderReport out;
  for (const auto &r : map.unmatched_ref) {
    out.errors_unmatched_ref_speaker += rm.at(r).size();
  }
  for (const auto &[r, h] : map.pairs) {
    const auto &ru = rm.at(r);
    const auto &hu = hm.at(h);
    std::size_t used = 0;
    for (const auto &[i, j] : exhaustive_cder_match(ru, hu)) {
      ++out.n_total;
      if (!j) {
        ++out.errors_iou_below_eta;
        continue;
      }
      ++used;
      if (iou(ru[i].segment, hu[*j].segment) < cfg.eta) {
        ++out.errors_iou_below_eta;
      }
    }
    out.errors_unmatched_hyp_utterance += hu.size() - used;
  }
  if (cfg.count_unmatched_hyp_speakers) {
    for (const auto &h : map.unmatched_hyp) {
      out.errors_unmatched_hyp_utterance += hm.at(h).size();
    }
  }
  out.n_error = out.errors_unmatched_ref_speaker + out.errors_iou_below_eta +
                out.errors_unmatched_hyp_utterance;
  return out;
}

void verify_one(const fs::path &dir, std::vector<FixtureCheck> &out) {
  const std::string name = dir.filename().string();
  auto record = [&](std::string check, bool ok, std::string detail) {
    out.push_back({name, std::move(check), ok, std::move(detail)});
  };

  Json expected;
  std::vector<Annotation> refs, hyps;
  try {
    expected = Json::parse(slurp(dir / "expected.json"));
    refs = parse_rttm(slurp(dir / "ref.rttm"));
    hyps = parse_rttm(slurp(dir / "hyp.rttm"));
  } catch (const std::exception &e) {
    record("load", false, e.what());
    return;
  }
  if (refs.size() != 1 || hyps.size() > 1) {
    record("load", false, "expected one reference and at most one hypothesis");
    return;
  }
  const Annotation &ref = refs.front();
  const Annotation hyp =
      hyps.empty() ? Annotation(ref.recording_id(), {}) : hyps.front();

  const std::string source = expected.value("source", "");
  const DerConfig der_cfg{expected.value("collar", 0.25), true};
  const CderConfig cder_cfg{expected.value("eta", 0.5), false};

  try {
    if (expected.contains("der") && !expected["der"].is_null()) {
      const Json &want = expected["der"];
      const DerReport got = compute_der(ref, hyp, der_cfg);
      record("der", der_matches(got, want), der_string(got));
      const DerReport grid = grid_der(ref, hyp, der_cfg);
      record("der-oracle", der_matches(grid, want) && grid == got,
             der_string(grid));
    }

    if (expected.contains("cder")) {
      const Json &want = expected["cder"];
      const CderReport got = score_cder(ref, hyp, cder_cfg);
      const bool ok = got.n_error == want.at("n_error").get<std::size_t>() &&
                      got.n_total == want.at("n_total").get<std::size_t>() &&
                      got.defined() == want.at("defined").get<bool>();
      record("cder", ok,
             "n_error=" + std::to_string(got.n_error) +
                 " n_total=" + std::to_string(got.n_total));
      if (source == "oracle") {
        const CderReport ex = exhaustive_cder(ref, hyp, cder_cfg);
        record("cder-oracle",
               ex.n_error == got.n_error && ex.n_total == got.n_total,
               "n_error=" + std::to_string(ex.n_error) +
                   " n_total=" + std::to_string(ex.n_total));
      }
    }

    if (expected.contains("merged_speakers")) {
      std::vector<std::string> got;
      for (const auto &u : merged_sequence(merge_utterances(ref))) {
        got.push_back(u.speaker);
      }
      std::string listing;
      for (const auto &s : got) listing += s + " ";
      record("merge",
             got == expected["merged_speakers"].get<std::vector<std::string>>(),
             listing);
    }
  } catch (const std::exception &e) {
    record("score", false, e.what());
  }
}

}  // namespace

std::vector<FixtureCheck> verify_fixtures(const fs::path &root) {
  std::vector<FixtureCheck> out;
  std::vector<fs::path> dirs;
  std::error_code ec;
  for (const auto &entry : fs::directory_iterator(root, ec)) {
    if (entry.is_directory()) dirs.push_back(entry.path());
  }
  if (ec) {
    out.push_back({root.string(), "load", false, ec.message()});
    return out;
  }
  std::sort(dirs.begin(), dirs.end());
  for (const fs::path &d : dirs) verify_one(d, out);
  return out;
}

}  // namespace diarscore
