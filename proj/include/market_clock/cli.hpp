#pragma once

#include <iosfwd>
#include <string>

namespace mclock::cli {

enum ExitCode : int {
    kOk = 0,
    kInvalidInput = 2,
    kNotViable = 3,
    kBoundViolation = 4,
};

// Entry point of the `market_clock` tool; returns the process exit code.
// Subcommands: analyze, simulate, study.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

// Formats with 12 significant digits.
std::string format_number(double v);

}  // namespace mclock::cli
