#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace njk {

// Exit codes of the command-line front end.
enum ExitCode : int { kExitOk = 0, kExitUsage = 1, kExitInvalid = 2, kExitParse = 3 };

inline constexpr std::uint64_t kDefaultSeed = 20240917;

// Runs one command.  `args` excludes the program name; input files named
// "-" are read from `in`.  `env_seed` is the value of NJK_SEED, if set.
int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err,
            const char* env_seed = nullptr);

}  // namespace njk
