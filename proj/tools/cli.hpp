#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cwbound::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kData = 2, kInternal = 3 };

/// Runs one command line (without the program name) and returns its exit
/// code. All output goes to `out` and diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cwbound::cli
