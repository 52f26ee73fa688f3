#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fraceig::cli {

enum ExitCode : int { kOk = 0, kInvalidInput = 2, kNonConvergence = 3, kCheckFailed = 4 };

/// Runs one command line (without the program name). Results go to files and
/// `out`; diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// "a:b:step", inclusive of b up to rounding. Throws InvalidInput.
std::vector<double> parse_s_range(const std::string& text);
/// Comma-separated list. Throws InvalidInput.
std::vector<double> parse_s_list(const std::string& text);

}  // namespace fraceig::cli
