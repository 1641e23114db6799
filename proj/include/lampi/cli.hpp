#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace lampi::cli {

enum ExitCode : int { kOk = 0, kNegative = 1, kInputError = 2 };

// Runs one command; `args` excludes the program name. Reports go to `out`
// as `key: value` lines, usage and CLI diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lampi::cli
