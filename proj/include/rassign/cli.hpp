#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace rassign::cli {

enum ExitCode : int { kSuccess = 0, kFailed = 1, kMalformed = 2, kBudget = 3 };

// Runs one command line (without the program name); documents go to out, diagnostics to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rassign::cli
