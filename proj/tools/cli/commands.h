// Copyright 2026 The bbtp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef BBTP_TOOLS_COMMANDS_H_
#define BBTP_TOOLS_COMMANDS_H_

#include <ostream>
#include <string>
#include <vector>

namespace bbtp::cli {

// Entry point shared by the executable and the tests. `args` excludes the
// program name. Returns the process exit code: 0 on success, 1 on I/O,
// parse or lookup failures, 2 on malformed command lines.
int RunCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bbtp::cli

#endif  // BBTP_TOOLS_COMMANDS_H_
