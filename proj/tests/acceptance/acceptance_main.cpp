// Copyright 2026 The qst Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


// Prints one PASS/FAIL line per acceptance criterion. With --criterion k only
// that one runs (ctest registers each separately).

#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "qst/acceptance.hpp"

int main(int argc, char** argv) {
  std::vector<int> ids;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--criterion" && i + 1 < argc) {
      ids.push_back(std::atoi(argv[++i]));
    } else {
      std::fprintf(stderr, "usage: %s [--criterion k]...\n", argv[0]);
      return 2;
    }
  }
  if (ids.empty())
    for (int k = 1; k <= qst::acceptance_count(); ++k) ids.push_back(k);
  int failed = 0;
  for (int id : ids) {
    const qst::CheckResult r = qst::run_criterion(id);
    std::printf("%s\n", qst::format_check(r).c_str());
    std::fflush(stdout);
    if (!r.passed) ++failed;
  }
  return failed == 0 ? 0 : 1;
}
