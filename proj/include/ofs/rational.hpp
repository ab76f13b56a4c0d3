#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/rational.hpp>

namespace ofs {

using Rational = boost::rational<std::int64_t>;
using BigInt = boost::multiprecision::cpp_int;

// Accepts "7/37", "0.19", "1", ".5". Decimals convert exactly (0.19 == 19/100).
// Throws FormatError on anything else.
Rational parse_rational(std::string_view text);

// "7/37", or "1" when the denominator is 1.
std::string to_fraction_string(const Rational& r);

// Round-half-up decimal rendering with a fixed number of fractional digits.
std::string to_decimal_string(const Rational& r, int digits);

// Scientific notation with three significant digits, truncated toward zero,
// e.g. 18939459 -> "1.89e7", 26794240 -> "2.67e7".
std::string to_scientific3(const BigInt& value);

}  // namespace ofs
