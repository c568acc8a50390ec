#pragma once

#include <iosfwd>
#include <span>
#include <string>

namespace ncig::cli {

// Exit codes of run().
inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;  // domain, numerical or I/O error
inline constexpr int kExitUsage = 2;  // unknown flag, bad value, missing subcommand

// Entry point behind the ncig binary. args excludes the program name.
int run(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace ncig::cli
