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


#pragma once

#include <string>
#include <vector>

namespace qst {

struct CheckResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

// Criteria 1 to 10.
int acceptance_count();
std::string acceptance_name(int id);

// The ones that finish in about a minute together (used by `verify`
// without --all).
std::vector<int> quick_criteria();

// Runs one criterion. Exceptions are caught and reported as failures.
CheckResult run_criterion(int id);

// "[PASS] 3 analytic thermal limit (12.3 s): detail"
std::string format_check(const CheckResult& result);

}  // namespace qst
