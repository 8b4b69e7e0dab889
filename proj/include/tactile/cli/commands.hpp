#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "tactile/error.hpp"

namespace tactile::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidateFail = 1;
inline constexpr int kExitUsage = 2;  // also invalid configuration and unreadable inputs
inline constexpr int kExitParse = 3;
inline constexpr int kExitRuntime = 4;

int exit_code_for(ErrorCode code);

// Full command line without the program name. Diagnostics go to `err` as
// one line each: `E_CODE: message`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tactile::cli
