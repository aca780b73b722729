// Copyright 2026 The Hiring Authors.
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

#ifndef HIRING_CLI_H_
#define HIRING_CLI_H_

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"

#include "hiring/distribution.h"

namespace hiring {

enum ExitCode {
  kExitOk = 0,
  kExitConfig = 2,
  kExitCoverage = 3,
  kExitResource = 4,
};

// Builds a law from {"kind": ..., "params": {...}}. Throws
// std::invalid_argument naming the offending field.
Distribution ParseDistribution(const nlohmann::json& spec);
// Accepts the JSON form or the shorthands uniform01, exponential(rate),
// pareto(shape;scale) and empirical(v0;v1;...).
Distribution ParseDistributionText(const std::string& text);

// Entry point shared by the binary and the tests. args excludes argv[0].
// Output goes to `out` (or the --out file) only when the command succeeds.
int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err);

}  // namespace hiring

#endif  // HIRING_CLI_H_
