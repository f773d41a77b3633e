#pragma once
// Command-line front end. Exit codes: 0 success, 1 input error,
// 2 solver/config incompatibility.

#include <string>
#include <vector>

namespace qipwsd {

/// Runs the CLI on `args` (without the program name). Kept out of main()
/// so exit codes and outputs are directly testable.
int cli_main(std::vector<std::string> args);

}  // namespace qipwsd
