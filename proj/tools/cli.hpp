#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace expdecomp::cli {

/// Exit codes of the front end.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitUsage = 2;

/// Runs one command line (args[0] is the program name). Results go to `out` unless --out is given.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Seed resolution: EXPANDER_SEED wins over --seed; neither gives 0.
std::uint64_t resolve_seed(const char* env_value, bool flag_given, std::uint64_t flag_value);

}  // namespace expdecomp::cli
