// Copyright 2026 The GRUEN Metric Authors.
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

#ifndef GRUEN_CLI_H_
#define GRUEN_CLI_H_

#include <iosfwd>
#include <string>
#include <vector>

namespace gruen {

// Exit codes of the command-line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFatal = 1;
inline constexpr int kExitPartial = 2;

// Runs the `gruen` command line. args[0] is the program name. Results go to
// `out`; diagnostics go to `err`, one line each, prefixed
// "gruen:error:<code>:" or "gruen:warning:".
int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err);

}  // namespace gruen

#endif  // GRUEN_CLI_H_
