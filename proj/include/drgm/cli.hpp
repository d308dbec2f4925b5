#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace drgm {

/// Process exit codes of the command-line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 2;
inline constexpr int kExitUnsatisfied = 3;

/// Runs the `drgm` command line. `args` excludes the program name. The
/// interactive questionnaire reads from `in`.
int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace drgm
