#pragma once

#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "bellgamma/core.hpp"

namespace bellgamma::cli {

enum class OutputFormat { Text, Json, Csv };

/// Bad flags or input files. Maps to exit code 2.
class UsageError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitInternal = 1;
inline constexpr int kExitUsage = 2;

/// One decimal value per line; `#` starts a comment; blank lines skipped.
/// Values are radians unless `degrees` is set.
std::vector<Angle> parse_angle_file(std::istream& in, bool degrees);

/// %.17g: round-trips every double.
std::string format_number(double value);

/// Runs one command line (without the program name). Reports go to `out`,
/// diagnostics to `err`. Returns the process exit code.
int run(std::span<const std::string> args, std::ostream& out, std::ostream& err);

} // namespace bellgamma::cli
