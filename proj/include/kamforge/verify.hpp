// Copyright 2026 The kamforge Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Acceptance criteria and invariant suites shared by `kamforge verify` and the
// acceptance test binary.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace kamforge::verify {

struct CheckResult {
  std::string id;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

struct Check {
  std::string id;
  std::string name;
  std::function<CheckResult()> run;
};

std::vector<Check> acceptance_checks();
std::vector<Check> property_checks(std::uint64_t seed = 20261016);

// Runs each check, turning an escaped exception into a failure.
std::vector<CheckResult> run(const std::vector<Check>& checks);

// One "PASS|FAIL id name (seconds) detail" line per result.
std::string format(const std::vector<CheckResult>& results);

bool all_pass(const std::vector<CheckResult>& results);

}  // namespace kamforge::verify
