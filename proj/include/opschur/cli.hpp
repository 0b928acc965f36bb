#pragma once

#include <string>
#include <vector>

namespace opschur::cli {

// Exit code contract: 0 ok, 1 input error, 2 structural (not chordal),
// 3 admissibility / completion failure, 4 usage.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 1;
inline constexpr int kExitStructural = 2;
inline constexpr int kExitAdmissibility = 3;
inline constexpr int kExitUsage = 4;

int run(const std::vector<std::string>& args);

}  // namespace opschur::cli
