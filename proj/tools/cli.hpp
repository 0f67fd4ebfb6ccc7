// Copyright 2026 The pptlocc Authors
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

#ifndef PPTLOCC_TOOLS_CLI_HPP
#define PPTLOCC_TOOLS_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace pptlocc::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitInputError = 1,
  kExitEstimationFailure = 2,
  kExitIdentityFailure = 3,
};

/// Runs one invocation. `args` excludes the program name. Machine-readable
/// output goes to `out`, diagnostics and human summaries to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pptlocc::cli

#endif  // PPTLOCC_TOOLS_CLI_HPP
