#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fairdiv {

inline constexpr const char* kToolName = "fairdiv";
inline constexpr const char* kToolVersion = "0.1.0";

// Exit codes: 0 success/holds, 1 fairness or truthfulness violation found,
// 2 input error, 3 mechanism restriction error, 4 capacity/budget.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run_cli(int argc, char** argv);

}  // namespace fairdiv
