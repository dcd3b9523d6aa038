#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace wildrisk {

/// Exit codes: 0 success, 2 usage or input error, 3 internal invariant violation.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 2;
inline constexpr int kExitInternal = 3;

/// Entry point of the `wildrisk` tool; args exclude the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace wildrisk
