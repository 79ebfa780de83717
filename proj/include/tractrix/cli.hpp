#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace tractrix::cli {

/// Exit codes of the command-line tool.
inline constexpr int kOk = 0;
inline constexpr int kValidation = 2;
inline constexpr int kNumerical = 3;

/// Runs the tool. `args[0]` is the program name. Reports go to `out`,
/// diagnostics and usage errors to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, const char* const* argv);

}  // namespace tractrix::cli
