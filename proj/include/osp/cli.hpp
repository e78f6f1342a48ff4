// Copyright 2026 The OSP Partition Authors
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

#ifndef OSP_CLI_HPP_
#define OSP_CLI_HPP_

#include <ostream>
#include <string>
#include <vector>

namespace osp::cli {

// Exit codes shared by every subcommand.
inline constexpr int kPass = 0;
inline constexpr int kFail = 1;
inline constexpr int kError = 2;

// Runs one command line (args exclude the program name). The JSON run
// report goes to `out`, errors to `err`.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace osp::cli

#endif  // OSP_CLI_HPP_
