#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hypertrend::cli {

/// Exit codes of the command-line tool.
enum ExitCode : int {
    kOk = 0,
    kUsage = 1,
    kDataError = 2,
    kNotHyperbolic = 3,
};

/// Runs `hypertrend <args...>`; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace hypertrend::cli
