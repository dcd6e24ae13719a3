#pragma once

#include <cstdint>
#include <exception>
#include <ostream>
#include <string>

#include "psdist/core_arith.hpp"

namespace psdist {

/// Exit codes of cli_dispatch.
enum ExitCode : int {
    kExitOk = 0,
    kExitUsage = 1,
    kExitInvalidConfig = 2,
    kExitPrecision = 3,
};

/// Counts such as "100000" or "1e6"; InvalidConfig unless a non-negative integer.
std::uint64_t parse_count(const std::string& text, const std::string& what);
/// Exponent in (0, 1) from a real spec; decimals and ratios stay exact rationals.
Exponent parse_gamma(const std::string& text);

/// Exit code for an exception escaping a subcommand.
int exit_code_for(const std::exception& e);

/// Runs one subcommand. argv[0] is the program name.
int cli_dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace psdist
