// Copyright 2026 The wbal Authors
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

#ifndef WBAL_TOOLS_CLI_HPP_
#define WBAL_TOOLS_CLI_HPP_

#include <iosfwd>
#include <string>
#include <vector>

namespace wbal::cli {

enum ExitCode : int {
  kOk = 0,
  kNotFound = 1,      // infeasible input or no solution
  kInputError = 2,    // usage, parse or validation error
  kVerifyFailed = 3,  // a produced or supplied certificate did not verify
};

struct CommandResult {
  int exit_code = kOk;
  std::string certificate_path;  // empty when JSON went to `out`
  std::string figure_path;
};

/// Runs one subcommand. `args` excludes the program name. JSON goes to
/// --json FILE or else to `out`; diagnostics go to `err`.
CommandResult run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace wbal::cli

#endif  // WBAL_TOOLS_CLI_HPP_
