#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace lgw::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomain = 2;
inline constexpr int kExitNumerical = 3;
inline constexpr int kExitUsage = 64;

inline constexpr double kDefaultTolerance = 1e-10;

/// Run `lgw <command> [flags]`; args excludes the program name.
/// Data goes to `out`, diagnostics and usage text to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lgw::cli
