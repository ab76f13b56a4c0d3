#include "ofs/rational.hpp"

#include <cctype>
#include <limits>

#include "ofs/errors.hpp"

namespace ofs {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

std::int64_t to_int(std::string_view s, std::string_view whole) {
  std::int64_t v = 0;
  for (char c : s) {
    if (v > (std::numeric_limits<std::int64_t>::max() - 9) / 10) {
      throw FormatError("number out of range: '" + std::string(whole) + "'");
    }
    v = v * 10 + (c - '0');
  }
  return v;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const std::string_view whole = text;
  auto bad = [&] { return FormatError("not a number: '" + std::string(whole) + "'"); };
  if (text.empty()) throw bad();

  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    auto num = text.substr(0, slash);
    auto den = text.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) throw bad();
    std::int64_t d = to_int(den, whole);
    if (d == 0) throw FormatError("zero denominator: '" + std::string(whole) + "'");
    return Rational(to_int(num, whole), d);
  }

  auto dot = text.find('.');
  std::string_view int_part = text.substr(0, dot);
  std::string_view frac_part =
      dot == std::string_view::npos ? std::string_view{} : text.substr(dot + 1);
  if (int_part.empty() && frac_part.empty()) throw bad();
  if (!int_part.empty() && !all_digits(int_part)) throw bad();
  if (dot != std::string_view::npos && !frac_part.empty() && !all_digits(frac_part)) throw bad();
  if (frac_part.size() > 17) throw FormatError("too many decimal digits: '" + std::string(whole) + "'");

  std::int64_t den = 1;
  for (std::size_t i = 0; i < frac_part.size(); ++i) den *= 10;
  std::int64_t num = int_part.empty() ? 0 : to_int(int_part, whole);
  if (num > std::numeric_limits<std::int64_t>::max() / den) throw bad();
  num = num * den + (frac_part.empty() ? 0 : to_int(frac_part, whole));
  return Rational(num, den);
}

std::string to_fraction_string(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

std::string to_decimal_string(const Rational& r, int digits) {
  BigInt num = r.numerator();
  BigInt den = r.denominator();
  bool negative = num < 0;
  if (negative) num = -num;
  BigInt scale = 1;
  for (int i = 0; i < digits; ++i) scale *= 10;
  // round half up on the magnitude
  BigInt scaled = (num * scale * 2 + den) / (den * 2);
  BigInt int_part = scaled / scale;
  BigInt frac = scaled % scale;
  std::string out = negative && scaled != 0 ? "-" : "";
  out += int_part.str();
  if (digits > 0) {
    std::string f = frac.str();
    out += "." + std::string(static_cast<std::size_t>(digits) - f.size(), '0') + f;
  }
  return out;
}

std::string to_scientific3(const BigInt& value) {
  if (value == 0) return "0";
  BigInt mag = value < 0 ? BigInt(-value) : value;
  std::string digits = mag.str();
  int exponent = static_cast<int>(digits.size()) - 1;
  // Truncated, not rounded: 26794240 prints as 2.67e7.
  digits = digits.substr(0, 3);
  while (digits.size() < 3) digits += '0';
  std::string out = value < 0 ? "-" : "";
  out += digits.substr(0, 1) + "." + digits.substr(1, 2) + "e" + std::to_string(exponent);
  return out;
}

}  // namespace ofs
