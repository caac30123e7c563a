#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace remy::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitInvariant = 2;
inline constexpr int kExitStatistical = 3;

// Environment variable holding the default seed; --seed overrides it.
inline constexpr const char* kSeedEnv = "REMY_SEED";

// Parses args (without the program name), runs the subcommand and writes
// JSON-lines records to out, diagnostics to err. Returns the exit code.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace remy::cli
