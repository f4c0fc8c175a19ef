#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace rlab::cli {

// Exit codes.
inline constexpr int kOk = 0;         // success, or the inequality holds
inline constexpr int kViolation = 1;  // violation found or certified
inline constexpr int kInputError = 2;  // bad input or failed hypothesis gate

/// Runs one subcommand. `args` excludes the program name. Reports go to
/// `out` (or the --out file), diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace rlab::cli
