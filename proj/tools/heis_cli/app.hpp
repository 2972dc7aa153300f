#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace heis::cli {

/// Parses `args` (without the program name), runs the chosen subcommand and
/// returns the process exit code: 0 ok, 2 bad arguments, 3 I/O failure,
/// 4 solver failure.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace heis::cli
