/*
* Copyright (C) 2026 seiropt contributors
*
* Licensed under the Apache License, Version 2.0 (the "License");
* you may not use this file except in compliance with the License.
* You may obtain a copy of the License at
*
*     http://www.apache.org/licenses/LICENSE-2.0
*
* Unless required by applicable law or agreed to in writing, software
* distributed under the License is distributed on an "AS IS" BASIS,
* WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
* See the License for the specific language governing permissions and
* limitations under the License.
*/
#pragma once

#include <string>
#include <vector>

namespace seiropt {

// Exit codes used by the command-line tool.
inline constexpr int exit_ok = 0;
inline constexpr int exit_internal = 1;
inline constexpr int exit_usage = 2;
inline constexpr int exit_io = 3;
inline constexpr int exit_validation = 4;
inline constexpr int exit_no_convergence = 5;
inline constexpr int exit_gradcheck = 6;

// Runs the tool: subcommands simulate, solve, compare, gradcheck.
// Never throws; every failure is reported on stderr and mapped to one of
// the exit codes above.
int run_cli(int argc, const char* const* argv);

// Same, for tests: `args` excludes the program name.
int run_cli(const std::vector<std::string>& args);

} // namespace seiropt
