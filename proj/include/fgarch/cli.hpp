#pragma once

#include <string>
#include <vector>

namespace fgarch {

/// Runs the command-line interface on argv[1..]; returns the process exit
/// code. Errors are emitted to stderr as single-line JSON.
int run_cli(const std::vector<std::string>& args);

}  // namespace fgarch
