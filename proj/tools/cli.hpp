#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace sfbench_cli {

// Exit codes: 0 success, 1 configuration or input error, 2 runtime failure.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 1;
inline constexpr int kExitRuntime = 2;

// `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sfbench_cli
