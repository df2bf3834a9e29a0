#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace vertexring {

// Exit statuses: 0 success, 1 an identity failed, 2 usage, config or
// unsupported-expansion error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

// args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace vertexring
