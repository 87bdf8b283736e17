// Copyright 2026 The refalign Authors
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

#ifndef REFALIGN_CLI_H
#define REFALIGN_CLI_H

#include <ostream>
#include <string>
#include <vector>

namespace refalign {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitNumeric = 2;

/// Runs one command line (without the program name). Human-readable text goes
/// to `out`, diagnostics to `err`. Structured output goes to --output when
/// given and to `out` otherwise. Returns kExitOk, kExitUsage for argument
/// errors, or kExitNumeric for numeric and convergence failures.
int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

}  // namespace refalign

#endif
