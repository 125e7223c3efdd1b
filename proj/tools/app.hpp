#pragma once

#include <string>
#include <vector>

namespace domsplit::cli {

inline constexpr const char* kToolVersion = "0.3.0";

// Exit status: 0 success, 2 negative verdict (NotDominated, infeasible,
// failed bound check), 1 tool failure.
int run(const std::vector<std::string>& args);

}  // namespace domsplit::cli
