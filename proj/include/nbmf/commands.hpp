// Copyright 2026 The nbmf-anneal Authors
//
//    Licensed under the Apache License, Version 2.0 (the "License");
//    you may not use this file except in compliance with the License.
//    You may obtain a copy of the License at
//
//        http://www.apache.org/licenses/LICENSE-2.0
//
//    Unless required by applicable law or agreed to in writing, software
//    distributed under the License is distributed on an "AS IS" BASIS,
//    WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//    See the License for the specific language governing permissions and
//    limitations under the License.

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "nbmf/config.hpp"

namespace nbmf {

/// Process exit codes.
enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitData = 2,
  kExitRuntime = 3,
};

/// Each command writes its artifacts plus manifest.json under opts.out and
/// throws on failure; run_command maps exceptions to exit codes.
void cmd_factorize(const RunOptions& opts, std::ostream& log);
void cmd_calibrate(const RunOptions& opts, std::ostream& log);
void cmd_benchmark(const RunOptions& opts, std::ostream& log);
void cmd_generate(const RunOptions& opts, std::ostream& log);

int run_command(Command command, const RunOptions& opts, std::ostream& log, std::ostream& err);

/// Full command-line entry point: `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& log, std::ostream& err);

}  // namespace nbmf
