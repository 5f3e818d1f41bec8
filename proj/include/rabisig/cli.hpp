#pragma once

// Command-line front end. Kept in the library so tests can drive it
// in-process and check exit codes and written files.

#include <ostream>
#include <string>
#include <vector>

namespace rabisig::cli {

inline constexpr int exit_ok = 0;
inline constexpr int exit_usage = 2;
inline constexpr int exit_unstable = 3;

/// Parses `args` (without the program name) and executes the subcommand.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rabisig::cli
