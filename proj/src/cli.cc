// diarscore/cli.cc
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

#include "diarscore/cli.h"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <vector>

#include "CLI11.hpp"
#include "diarscore/cder.h"
#include "diarscore/der.h"
#include "diarscore/errors.h"
#include "diarscore/rttm_io.h"
#include "diarscore/simulator.h"

namespace diarscore {

namespace {

namespace fs = std::filesystem;

std::string read_file(const fs::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<fs::path> rttm_files(const fs::path &path) {
  if (!fs::is_directory(path)) return {path};
  std::vector<fs::path> files;
  for (const auto &entry : fs::directory_iterator(path)) {
    if (entry.is_regular_file() && entry.path().extension() == ".rttm") {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  return files;
}

}  // namespace

std::map<std::string, Annotation> load_rttm_path(const fs::path &path) {
  if (!fs::exists(path)) {
    throw Error("no such file or directory: '" + path.string() + "'");
  }
  std::map<std::string, std::vector<Turn>> turns;
  const auto files = rttm_files(path);
  for (const fs::path &file : files) {
    std::vector<Annotation> anns;
    try {
      anns = parse_rttm(read_file(file));
    } catch (const MalformedLine &e) {
      throw MalformedLine(e.line_no(), file.string() + ": " + e.reason());
    } catch (const SameSpeakerOverlap &e) {
      throw SameSpeakerOverlap(e.recording_id(),
                               e.speaker() + "' in file '" + file.string(),
                               e.line_no());
    }
    for (const Annotation &a : anns) {
      auto &dst = turns[a.recording_id()];
      dst.insert(dst.end(), a.turns().begin(), a.turns().end());
    }
  }
  std::map<std::string, Annotation> out;
  for (auto &[id, t] : turns) {
    out.emplace(id, Annotation(id, std::move(t)));
  }
  return out;
}

int run_score(const ScoreOptions &opts, std::ostream &out, std::ostream &err) {
  std::map<std::string, Annotation> refs, hyps;
  try {
    refs = load_rttm_path(opts.ref);
    hyps = load_rttm_path(opts.hyp);
  } catch (const MalformedLine &e) {
    err << "error: malformed RTTM, " << e.what() << "\n";
    return kExitBadInput;
  } catch (const Error &e) {
    err << "error: " << e.what() << "\n";
    return kExitBadInput;
  }
  if (refs.empty()) {
    err << "error: no reference recordings in '" << opts.ref.string() << "'\n";
    return kExitBadInput;
  }
  for (const auto &[id, _] : hyps) {
    if (!refs.count(id)) {
      err << "warning: hypothesis recording '" << id
          << "' has no reference and is ignored\n";
    }
  }

  const DerConfig der_cfg{opts.collar_s, true};
  const CderConfig cder_cfg{opts.eta, opts.count_unmatched_hyp_speakers};
  const bool want_der = opts.metric != Metric::kCder;
  const bool want_cder = opts.metric != Metric::kDer;

  std::vector<RecordingScore> scores;
  bool undefined = false;
  for (const auto &[id, ref] : refs) {
    auto it = hyps.find(id);
    Annotation empty_hyp(id, {});
    if (it == hyps.end()) {
      err << "warning: no hypothesis for recording '" << id
          << "'; scored as entirely missed\n";
    }
    const Annotation &hyp = it == hyps.end() ? empty_hyp : it->second;

    RecordingScore score{id, std::nullopt, std::nullopt};
    if (want_der) {
      try {
        score.der = compute_der(ref, hyp, der_cfg);
      } catch (const EmptyReference &e) {
        err << "warning: DER skipped: " << e.what() << "\n";
      }
    }
    if (want_cder) {
      score.cder = score_cder(ref, hyp, cder_cfg);
      if (!score.cder->defined()) {
        undefined = true;
        err << "warning: CDER undefined for recording '" << id
            << "' (no reference speaker matched)\n";
      }
    }
    scores.push_back(std::move(score));
  }

  out << write_report(summarize(std::move(scores)), opts.format, opts.per_file);
  return undefined ? kExitUndefinedCder : kExitOk;
}

int run_simulate(const SimulateOptions &opts, std::ostream &out,
                 std::ostream &err) {
  if (opts.n_systems < 2) {
    err << "error: --n-systems must be at least 2\n";
    return kExitBadInput;
  }
  DialogProfile dialog;
  dialog.duration_min = opts.duration_min;
  dialog.rng_seed = opts.seed;
  const auto grid = severity_grid(opts.n_systems, opts.seed, opts.max_severity);
  const StudyResult study =
      correlation_study(opts.n_systems, dialog, grid, opts.n_dialogs);
  const std::string csv = write_study_csv(study);

  char line[64];
  std::snprintf(line, sizeof(line), "pearson_r %.4f\n", study.pearson_r);
  if (opts.out.empty()) {
    out << csv;
    err << line;
    return kExitOk;
  }
  std::ofstream file(opts.out, std::ios::binary);
  if (!file || !(file << csv) || !file.flush()) {
    err << "error: cannot write '" << opts.out.string() << "'\n";
    return kExitFailure;
  }
  out << line;
  return kExitOk;
}

int run_inspect_merge(const fs::path &path, std::ostream &out,
                      std::ostream &err) {
  std::map<std::string, Annotation> anns;
  try {
    anns = load_rttm_path(path);
  } catch (const Error &e) {
    err << "error: " << e.what() << "\n";
    return kExitBadInput;
  }
  if (anns.empty()) {
    out << "no recordings\n";
    return kExitOk;
  }
  for (const auto &[id, ann] : anns) {
    const auto merged = merged_sequence(merge_utterances(ann));
    out << "recording " << id << " (" << ann.turns().size() << " turns, "
        << merged.size() << " merged utterances)\n";
    for (const MergedUtterance &u : merged) {
      out << "  " << u.speaker << " " << format_seconds(u.segment.start_ms())
          << " " << format_seconds(u.segment.end_ms()) << " " << u.source_count
          << "\n";
    }
  }
  return kExitOk;
}

int run_cli(int argc, const char *const *argv, std::ostream &out,
            std::ostream &err) {
  CLI::App app{"Speaker diarization scoring: DER and conversational CDER"};
  app.require_subcommand(1);

  ScoreOptions score;
  std::string metric = "all", format = "text";
  auto *score_cmd = app.add_subcommand("score", "Score hypothesis RTTM against reference RTTM");
  score_cmd->add_option("--ref", score.ref, "Reference RTTM file or directory")->required();
  score_cmd->add_option("--hyp", score.hyp, "Hypothesis RTTM file or directory")->required();
  score_cmd->add_option("--metric", metric, "der, cder or all")
      ->check(CLI::IsMember({"der", "cder", "all"}));
  score_cmd->add_option("--collar", score.collar_s, "DER collar in seconds")
      ->check(CLI::NonNegativeNumber);
  score_cmd->add_option("--eta", score.eta, "CDER IoU threshold in (0, 1)")
      ->check(CLI::Validator(
          [](std::string &v) -> std::string {
            double eta = 0;
            try {
              eta = std::stod(v);
            } catch (...) {
              return "eta must be a number";
            }
            return eta > 0.0 && eta < 1.0 ? "" : "eta must lie in (0, 1)";
          },
          "(0,1)"));
  score_cmd->add_option("--format", format, "json, csv or text")
      ->check(CLI::IsMember({"json", "csv", "text"}));
  score_cmd->add_flag("--per-file", score.per_file, "Also report every recording");
  score_cmd->add_flag("--count-unmatched-hyp-speakers",
                      score.count_unmatched_hyp_speakers,
                      "Charge utterances of unmapped hypothesis speakers in CDER");

  SimulateOptions sim;
  auto *sim_cmd = app.add_subcommand("simulate", "Run the synthetic DER/CDER correlation study");
  sim_cmd->add_option("--n-systems", sim.n_systems, "Number of simulated systems (>= 2)");
  sim_cmd->add_option("--seed", sim.seed, "Random seed");
  sim_cmd->add_option("--out", sim.out, "Output CSV path");
  sim_cmd->add_option("--n-dialogs", sim.n_dialogs, "Dialogs in the synthetic corpus")
      ->check(CLI::PositiveNumber);
  sim_cmd->add_option("--duration-min", sim.duration_min, "Dialog length in minutes")
      ->check(CLI::PositiveNumber);
  sim_cmd->add_option("--max-severity", sim.max_severity, "Severity of the worst system")
      ->check(CLI::Range(0.0, 1.0));

  fs::path merge_path;
  auto *merge_cmd = app.add_subcommand("inspect-merge", "Print merged utterances of an RTTM file");
  merge_cmd->add_option("path", merge_path, "RTTM file or directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError &e) {
    err << "error: " << e.what() << "\n" << "run with --help for usage\n";
    return kExitBadInput;
  }

  try {
    if (*score_cmd) {
      score.metric = metric == "der"    ? Metric::kDer
                     : metric == "cder" ? Metric::kCder
                                        : Metric::kAll;
      score.format = *parse_report_format(format);
      return run_score(score, out, err);
    }
    if (*sim_cmd) return run_simulate(sim, out, err);
    return run_inspect_merge(merge_path, out, err);
  } catch (const InvalidConfig &e) {
    err << "error: " << e.what() << "\n";
    return kExitBadInput;
  } catch (const std::exception &e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
}

}  // namespace diarscore
