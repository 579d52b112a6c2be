#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace lmnpt::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitRuntime = 1;
inline constexpr int kExitUsage = 2;

/// Entry point of the `lmnpt` tool. Subcommands: validate, sweep, empirical,
/// domain, selftest, synth. Returns 0 on success, 2 for usage/config errors
/// (unknown flags, unreadable or invalid config), 1 for runtime failures.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Convenience overload; args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lmnpt::cli
