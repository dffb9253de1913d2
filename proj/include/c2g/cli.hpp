#pragma once

#include <iosfwd>
#include <string>

namespace c2g {

// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitIo = 2;
inline constexpr int kExitNumerical = 3;

/// Environment variable naming a config file, used when --config is absent.
inline constexpr const char* kConfigEnvVar = "C2G_CONFIG";

/// Entry point of the c2g tool. Normal output goes to out, warnings and the
/// one-line JSON error record to err.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace c2g
