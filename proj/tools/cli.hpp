#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace tmesh::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kError = 1;        // bad arguments or input; JSON error on stderr
inline constexpr int kCheckFailed = 2;  // a check ran and failed; witness on stdout

/// Runs the command line `args` (without the program name). Machine-readable
/// results go to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tmesh::cli
