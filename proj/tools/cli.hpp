#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace probinfo::cli {

/// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kInputError = 1;
inline constexpr int kAssertionFailure = 2;

/// Environment variable naming the default machine file.
inline constexpr const char* kMachineEnv = "PROBINFO_MACHINE";

/// Runs one subcommand. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace probinfo::cli
