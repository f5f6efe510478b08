#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace fixfree::cli {

/// Exit codes of the command-line front end.
enum ExitCode : int {
    kSuccess = 0,
    kVerdictFailure = 1,  // a verified predicate came out negative
    kUsageError = 2,      // bad flags, unreadable files, malformed polynomials or inputs
};

/// Runs one command; args excludes the program name.  Reports go to out,
/// diagnostics to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fixfree::cli
