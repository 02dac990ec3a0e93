#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace skein {

/// Exit codes of the command-line tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitVerificationFailed = 1,
  kExitInputError = 2,
  kExitInconsistency = 3,
};

/// Default desk-scale caps; each can be raised through the environment
/// variable named next to it.
inline constexpr int kDefaultVerifyMaxN = 4;         // SKEIN_MAX_VERIFY_N
inline constexpr int kDefaultQuotientMaxN = 3;       // SKEIN_MAX_QUOTIENT_N
inline constexpr int kDefaultOracleMaxCrossings = 24;  // SKEIN_MAX_ORACLE_CROSSINGS

/// Runs the tool on argv-style arguments (args[0] is the program name).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace skein
