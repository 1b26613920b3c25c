#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace strucnet {

// Exit codes shared by the CLI and its tests.
inline constexpr int kExitOk = 0;
inline constexpr int kExitNegative = 1;   // analysis negative under --expect-controllable
inline constexpr int kExitUsage = 2;      // bad arguments
inline constexpr int kExitBadInput = 3;   // unreadable / invalid input document
inline constexpr int kExitSizeGuard = 4;  // exhaustive search refused the instance

/// Runs the command line driver. `args` excludes the program name. JSON
/// reports go to `out`; human-readable summaries and errors go to `err`.
/// `stdin_text` supplies the document when an input path is "-".
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
            const std::string& stdin_text = "");

}  // namespace strucnet
