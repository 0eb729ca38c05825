#include "orthohaptic/text.hpp"

#include "orthohaptic/geometry.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <system_error>

namespace orthohaptic {

std::string format_shortest(double value) {
    if (value == 0.0) value = 0.0;  // canonicalize -0
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, res.ptr);
}

std::string format_sig9(double value) {
    if (value == 0.0) value = 0.0;
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.9g", value);
    return std::string(buf);
}

double parse_finite_double(const std::string& token, const std::string& what) {
    const std::string t = trim(token);
    if (t.empty()) raise(ErrorCode::BadConfig, "empty value for " + what);
    double value = 0.0;
    const char* begin = t.data();
    const char* end = begin + t.size();
    const auto res = std::from_chars(begin, end, value);
    if (res.ec != std::errc{} || res.ptr != end)
        raise(ErrorCode::BadConfig, "invalid number '" + t + "' for " + what);
    if (!std::isfinite(value))
        raise(ErrorCode::BadConfig, "non-finite value for " + what);
    return value;
}

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) return "";
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

}  // namespace orthohaptic
