#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace secvis::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitFailure = 2;

// Runs one CLI invocation. `args` excludes the program name. Image paths
// and endpoints given as "-" use `in` / `out`. Diagnostics go to `err` as
// "error: <tag>: <message>".
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err);

}  // namespace secvis::cli
