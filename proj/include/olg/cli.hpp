// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace olg {

enum ExitCode : int {
    kExitOk = 0,
    kExitParse = 1,
    kExitUsage = 2,
    kExitIo = 3,
};

/// Runs the `olg` command line. `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace olg
