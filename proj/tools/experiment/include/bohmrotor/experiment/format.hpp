#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace bohmrotor::experiment {

/// 17 significant digits, locale independent.
std::string format_double(double value);
std::string format_hex(std::uint64_t value);

/// Plain decimal, or a multiple of pi: "pi", "-pi", "2pi", "0.5*pi", "pi/2".
double parse_double(std::string_view text);
long long parse_integer(std::string_view text);
std::uint64_t parse_unsigned(std::string_view text);

} // namespace bohmrotor::experiment
