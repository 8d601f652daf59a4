#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace metab::cli {

enum ExitCode : int { ok = 0, negative = 1, parse_error = 2, domain_error = 3 };

/// Runs one command line (without the program name). Results go to `out`,
/// diagnostics to `err`; the return value is the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace metab::cli
