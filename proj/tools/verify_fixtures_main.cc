// tools/verify_fixtures_main.cc
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
// Recomputes every golden fixture through the scorers and the oracles.
//
// Usage: verify-fixtures <fixture-root>

#include <iostream>

#include "diarscore/fixtures.h"

int main(int argc, char *argv[]) {
  if (argc != 2) {
    std::cerr << "Usage: verify-fixtures <fixture-root>\n";
    return 2;
  }
  const auto checks = diarscore::verify_fixtures(argv[1]);
  int failed = 0;
  for (const auto &c : checks) {
    std::cout << (c.passed ? "PASS " : "FAIL ") << c.fixture << " " << c.check
              << "  " << c.detail << "\n";
    failed += !c.passed;
  }
  std::cout << checks.size() - failed << "/" << checks.size()
            << " fixture checks passed\n";
  return failed == 0 && !checks.empty() ? 0 : 1;
}
