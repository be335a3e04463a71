#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace prefkb {

/// Runs the command-line interface on `args` (without the program name).
/// Returns the exit status: 0 on success, 1 on domain errors (and failed
/// validation), 2 on usage or parse errors.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace prefkb
