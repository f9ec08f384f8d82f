#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace loclang::cli {

/// Exit codes: 0 ok, 1 rejected (or corpus disagreement), 2 runtime fault, 3 usage error.
enum ExitCode : int { kOk = 0, kRejected = 1, kFault = 2, kUsage = 3 };

/// args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace loclang::cli
