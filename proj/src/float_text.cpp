#include "tinydense/float_text.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <string_view>
#include <system_error>

namespace tinydense {

namespace {

std::string_view to_chars_or_die(std::array<char, 64>& buf, double value,
                                 std::chars_format fmt) {
    auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value, fmt);
    if (ec != std::errc{}) {
        std::abort();  // 64 bytes always fit a shortest binary64 representation
    }
    return {buf.data(), static_cast<std::size_t>(end - buf.data())};
}

}  // namespace

std::string shortest_float(double value) {
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value < 0 ? "-inf" : "inf";
    std::array<char, 64> buf{};
    std::string text{to_chars_or_die(buf, value, std::chars_format::general)};
    if (text.find_first_of(".e") == std::string::npos) text += ".0";
    return text;
}

std::string python_float_repr(double value) {
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value < 0 ? "-inf" : "inf";
    if (value == 0.0) return std::signbit(value) ? "-0.0" : "0.0";

    // Scientific shortest form: [-]d[.ddd]e(+|-)XX
    std::array<char, 64> buf{};
    std::string_view sci = to_chars_or_die(buf, value, std::chars_format::scientific);
    std::string out;
    if (sci.front() == '-') {
        out += '-';
        sci.remove_prefix(1);
    }
    const auto e_pos = sci.find('e');
    std::string digits;
    for (char c : sci.substr(0, e_pos)) {
        if (c != '.') digits += c;
    }
    int exponent = 0;
    std::string_view exp_text = sci.substr(e_pos + 1);
    if (exp_text.front() == '+') exp_text.remove_prefix(1);
    std::from_chars(exp_text.data(), exp_text.data() + exp_text.size(), exponent);

    if (exponent >= -4 && exponent < 16) {
        if (exponent < 0) {
            out += "0.";
            out.append(static_cast<std::size_t>(-exponent - 1), '0');
            out += digits;
        } else {
            const auto int_len = static_cast<std::size_t>(exponent) + 1;
            if (digits.size() <= int_len) {
                out += digits;
                out.append(int_len - digits.size(), '0');
                out += ".0";
            } else {
                out += digits.substr(0, int_len);
                out += '.';
                out += digits.substr(int_len);
            }
        }
        return out;
    }

    out += digits.front();
    if (digits.size() > 1) {
        out += '.';
        out += digits.substr(1);
    }
    out += 'e';
    out += exponent < 0 ? '-' : '+';
    const int magnitude = std::abs(exponent);
    if (magnitude < 10) out += '0';
    out += std::to_string(magnitude);
    return out;
}

double round_decimal(double value, int decimals) {
    if (!std::isfinite(value) || decimals > 330) return value;
    if (decimals < 0) decimals = 0;
    // glibc printf converts the exact binary value and breaks exact ties to even.
    const int needed = std::snprintf(nullptr, 0, "%.*f", decimals, value);
    std::string text(static_cast<std::size_t>(needed) + 1, '\0');
    std::snprintf(text.data(), text.size(), "%.*f", decimals, value);
    return std::strtod(text.c_str(), nullptr);
}

}  // namespace tinydense
