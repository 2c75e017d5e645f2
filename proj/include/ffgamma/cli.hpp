#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace ffg::cli {

enum ExitCode : int { kVerified = 0, kFailure = 1, kUsage = 2 };

// Runs one command line (without the program name). Output goes to `out`,
// diagnostics to `err`. Returns 0 when everything verified, 1 on a
// verification failure, 2 on a usage or guard error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ffg::cli
