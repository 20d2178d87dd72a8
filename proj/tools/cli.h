#ifndef POLYSIZE_TOOLS_CLI_H
#define POLYSIZE_TOOLS_CLI_H

#include <iosfwd>
#include <string>
#include <vector>

namespace polysize::cli {

// Exit statuses.
inline constexpr int kOk = 0;
inline constexpr int kRejected = 1;
inline constexpr int kInputError = 2;  // syntax, restriction, annotation
inline constexpr int kDegreeCap = 3;
inline constexpr int kRuntimeError = 4;

// Runs the command line `args` (without the program name). An input path
// of "-" reads `in`.
int run(const std::vector<std::string>& args, std::istream& in,
        std::ostream& out, std::ostream& err);

}  // namespace polysize::cli

#endif  // POLYSIZE_TOOLS_CLI_H
