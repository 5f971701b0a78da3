#pragma once

#include <iosfwd>

namespace arms::harness {

inline constexpr int kExitOk = 0;
inline constexpr int kExitRuntime = 1;
inline constexpr int kExitUsage = 2;

/// Subcommands: train, eval, gen-maps, verify-theory, plot, grad-check.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace arms::harness
