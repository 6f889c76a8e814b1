#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace ec::cli {

enum ExitCode { kPass = 0, kCheckFailure = 1, kUsageError = 2 };

/// Runs the command line `args` (without the program name). JSON, or a table
/// under --human, goes to `out`; usage text goes to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ec::cli
