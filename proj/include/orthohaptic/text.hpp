#pragma once

#include <string>

namespace orthohaptic {

/// Shortest decimal representation that parses back to the same double.
std::string format_shortest(double value);

/// Fixed 9-significant-digit formatting for human-readable output.
std::string format_sig9(double value);

/// Strict double parse of a whole token; throws BadConfig on trailing junk,
/// empty input, or non-finite values.
double parse_finite_double(const std::string& token, const std::string& what);

/// Trim ASCII whitespace from both ends.
std::string trim(const std::string& s);

}  // namespace orthohaptic
