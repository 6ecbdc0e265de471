#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace matinv2 {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitUsage = 2;

// args excludes the program name. Subcommands: invariants, separate,
// verify-lemmas, witness, selftest.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace matinv2
