// Copyright 2026 The toycat Authors
//
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

#include <string>
#include <vector>

#include "json.hpp"
#include "toycat/closure.hpp"

namespace toycat {

struct SuiteCheck {
  std::string group;
  std::string name;
  bool passed = false;
  std::string detail;
};

struct SuiteReport {
  std::string name;
  std::vector<SuiteCheck> checks;

  bool passed() const;
  nlohmann::json to_json() const;
  std::string to_text() const;
};

struct SuiteOptions {
  ClosureConfig closure = default_closure_config();
  // Appended to the Spek generators before the closure is built. Injecting
  // delta_oplus here makes its exclusion check fail, as a negative control.
  std::vector<Generator> extra_generators;
};

// Runs the checks of "qubit", "spek" or "all". Throws TypeError for any
// other name.
SuiteReport run_suite(const std::string& name, const SuiteOptions& options = {});

}  // namespace toycat
