#pragma once

// Command-line surface. cli_main takes argv-style arguments (without the
// program name) and returns the process exit code:
//   0 success    2 parse/usage error          3 degenerate input / not a group
//   4 undefined phase                         5 not a symmetry / not closed
//   6 undersampled path                       1 unexpected failure

#include <string>
#include <vector>

namespace starphase {

int cli_main(std::vector<std::string> args);

}  // namespace starphase
