// diarscore/cli.h
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

#ifndef DIARSCORE_CLI_H_
#define DIARSCORE_CLI_H_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>

#include "diarscore/report.h"
#include "diarscore/timeline.h"

namespace diarscore {

enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,       // I/O problems such as an unwritable --out
  kExitBadInput = 2,      // usage errors and malformed RTTM
  kExitUndefinedCder = 3  // reports written, but some CDER was undefined
};

enum class Metric { kDer, kCder, kAll };

struct ScoreOptions {
  std::filesystem::path ref;
  std::filesystem::path hyp;
  Metric metric = Metric::kAll;
  double collar_s = 0.25;
  double eta = 0.5;
  ReportFormat format = ReportFormat::kText;
  bool per_file = false;
  bool count_unmatched_hyp_speakers = false;
};

struct SimulateOptions {
  std::size_t n_systems = 50;
  std::uint64_t seed = 1;
  std::filesystem::path out;  // empty: CSV to standard output
  std::size_t n_dialogs = 4;
  double duration_min = 30.8;
  double max_severity = 1.0;
};

// Reads one RTTM file, or every *.rttm file of a directory, keyed by file id.
// Records of one file id spread over several files are combined. Throws
// MalformedLine or SameSpeakerOverlap, with the file name in the message.
std::map<std::string, Annotation> load_rttm_path(
    const std::filesystem::path &path);

int run_score(const ScoreOptions &opts, std::ostream &out, std::ostream &err);
int run_simulate(const SimulateOptions &opts, std::ostream &out,
                 std::ostream &err);
int run_inspect_merge(const std::filesystem::path &path, std::ostream &out,
                      std::ostream &err);

// Parses argv and dispatches to a subcommand; returns the exit code.
int run_cli(int argc, const char *const *argv, std::ostream &out,
            std::ostream &err);

}  // namespace diarscore

#endif  // DIARSCORE_CLI_H_
