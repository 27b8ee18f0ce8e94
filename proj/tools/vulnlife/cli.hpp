// Copyright 2026 The vulnlife Authors
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

#ifndef VULNLIFE_TOOLS_CLI_HPP_
#define VULNLIFE_TOOLS_CLI_HPP_

#include <iosfwd>
#include <string>
#include <vector>

namespace vulnlife::tools {

enum ExitCode : int { kOk = 0, kUsageError = 1, kDataError = 2 };

// Runs one subcommand (ingest, propagate, survival, fit, regress, simulate,
// report). A JSON summary goes to `out`; warnings and usage text to `err`.
int run(int argc, const char* const* argv, std::ostream& out,
        std::ostream& err);
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace vulnlife::tools

#endif  // VULNLIFE_TOOLS_CLI_HPP_
