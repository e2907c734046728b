#include "bohmrotor/experiment/format.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <limits>

#include "bohmrotor/errors.hpp"
#include "bohmrotor/grid.hpp"

namespace bohmrotor::experiment {

namespace {

std::string_view trim(std::string_view text) {
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = text.find_last_not_of(" \t\r\n");
    return text.substr(first, last - first + 1);
}

double plain_double(std::string_view text) {
    text = trim(text);
    if (!text.empty() && text.front() == '+') {
        text.remove_prefix(1);
    }
    double value = 0.0;
    const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (text.empty() || ec != std::errc() || end != text.data() + text.size()) {
        throw ConfigError("not a number: '" + std::string(text) + "'");
    }
    return value;
}

} // namespace

std::string format_double(double value) {
    if (std::isnan(value)) {
        return "nan";
    }
    std::array<char, 64> buffer{};
    const auto [end, ec] =
        std::to_chars(buffer.data(), buffer.data() + buffer.size(), value, std::chars_format::general, 17);
    return std::string(buffer.data(), end);
}

std::string format_hex(std::uint64_t value) {
    std::array<char, 17> buffer{};
    const auto [end, ec] = std::to_chars(buffer.data(), buffer.data() + buffer.size(), value, 16);
    std::string digits(buffer.data(), end);
    return "0x" + std::string(16 - digits.size(), '0') + digits;
}

double parse_double(std::string_view text) {
    text = trim(text);
    const auto pi = text.find("pi");
    double value = 0.0;
    if (pi == std::string_view::npos) {
        value = plain_double(text);
    } else {
        std::string_view coefficient = trim(text.substr(0, pi));
        std::string_view divisor = trim(text.substr(pi + 2));
        if (!coefficient.empty() && coefficient.back() == '*') {
            coefficient = trim(coefficient.substr(0, coefficient.size() - 1));
        }
        double scale = 1.0;
        if (coefficient == "-") {
            scale = -1.0;
        } else if (!coefficient.empty()) {
            scale = plain_double(coefficient);
        }
        value = scale * kPi;
        if (!divisor.empty()) {
            if (divisor.front() != '/') {
                throw ConfigError("not a number: '" + std::string(text) + "'");
            }
            value /= plain_double(divisor.substr(1));
        }
    }
    if (!std::isfinite(value)) {
        throw ConfigError("not a finite number: '" + std::string(text) + "'");
    }
    return value;
}

long long parse_integer(std::string_view text) {
    text = trim(text);
    if (!text.empty() && text.front() == '+') {
        text.remove_prefix(1);
    }
    long long value = 0;
    const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (text.empty() || ec != std::errc() || end != text.data() + text.size()) {
        throw ConfigError("not an integer: '" + std::string(text) + "'");
    }
    return value;
}

std::uint64_t parse_unsigned(std::string_view text) {
    text = trim(text);
    std::uint64_t value = 0;
    const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (text.empty() || ec != std::errc() || end != text.data() + text.size()) {
        throw ConfigError("not an unsigned integer: '" + std::string(text) + "'");
    }
    return value;
}

} // namespace bohmrotor::experiment
