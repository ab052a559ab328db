// Copyright 2026 The reqsim Authors
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

#ifndef REQSIM_CLI_H
#define REQSIM_CLI_H

#include <ostream>
#include <stdexcept>

namespace reqsim {

/// Exit statuses of the command-line tool.
enum ExitCode : int {
    kExitOk = 0,
    kExitConfig = 2,
    kExitNumerical = 3,
    kExitIo = 4,
};

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Entry point of the `reqsim` tool: sweep, cnot, optimize, bloch, program, catalog.
int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

}  // namespace reqsim

#endif  // REQSIM_CLI_H
