// diarscore/fixtures.h
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
//
// Golden fixtures. Each fixture is a directory holding ref.rttm, hyp.rttm
// (one recording each; hyp.rttm may be empty) and expected.json:
//
//   {
//     "source": "trivial" | "oracle" | "worked-example",
//     "collar": 0.0,             // seconds
//     "eta": 0.5,
//     "der": {"miss_ms": .., "fa_ms": .., "error_ms": .., "total_ms": ..},
//     "cder": {"n_error": .., "n_total": .., "defined": true},
//     "merged_speakers": ["A", "B", ...]   // optional, reference side
//   }
//
// "oracle" fixtures hold values produced by the brute-force oracles; they are
// re-derived from the oracles on every verification run.

#ifndef DIARSCORE_FIXTURES_H_
#define DIARSCORE_FIXTURES_H_

#include <filesystem>
#include <string>
#include <vector>

namespace diarscore {

struct FixtureCheck {
  std::string fixture;
  std::string check;
  bool passed;
  std::string detail;
};

// Verifies every fixture directory under `root`, in name order. Problems are
// reported as failed checks, never thrown.
std::vector<FixtureCheck> verify_fixtures(const std::filesystem::path &root);

}  // namespace diarscore

#endif  // DIARSCORE_FIXTURES_H_
