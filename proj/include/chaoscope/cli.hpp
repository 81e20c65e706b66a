#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace chaoscope {

/// Process exit codes of the command-line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 2;       // usage, missing file, parse or range errors
inline constexpr int kExitEstimation = 3;  // estimator could not produce a value

/// Runs the command line `args` (without the program name). Reports go to
/// `out`; error names and messages go to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace chaoscope
