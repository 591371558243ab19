#include "ricci/scalar.hpp"

#include <charconv>
#include <cstdio>
#include <string>

#include "ricci/error.hpp"

namespace ricci {

namespace {

Rational parse_decimal(std::string_view text) {
  std::string digits;
  long exponent = 0;
  bool negative = false;
  bool seen_point = false;
  bool seen_digit = false;
  std::size_t i = 0;
  if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
    negative = text[i] == '-';
    ++i;
  }
  for (; i < text.size(); ++i) {
    const char c = text[i];
    if (c >= '0' && c <= '9') {
      digits.push_back(c);
      seen_digit = true;
      if (seen_point) --exponent;
    } else if (c == '.' && !seen_point) {
      seen_point = true;
    } else if (c == 'e' || c == 'E') {
      long e = 0;
      std::string_view rest = text.substr(i + 1);
      if (!rest.empty() && rest.front() == '+') rest.remove_prefix(1);
      auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), e);
      if (ec != std::errc{} || ptr != rest.data() + rest.size()) {
        throw Error(ErrorKind::InvalidInput, "bad exponent in number '" + std::string(text) + "'");
      }
      exponent += e;
      i = text.size();
      break;
    } else {
      throw Error(ErrorKind::InvalidInput, "not a number: '" + std::string(text) + "'");
    }
  }
  if (!seen_digit) {
    throw Error(ErrorKind::InvalidInput, "not a number: '" + std::string(text) + "'");
  }
  mpz_class numerator(digits, 10);
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(exponent < 0 ? -exponent : exponent));
  Rational result = exponent < 0 ? Rational(numerator, scale) : Rational(numerator * scale);
  result.canonicalize();
  return negative ? Rational(-result) : result;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  if (text.empty()) throw Error(ErrorKind::InvalidInput, "empty number");
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return parse_decimal(text);
  const Rational num = parse_decimal(text.substr(0, slash));
  const Rational den = parse_decimal(text.substr(slash + 1));
  if (sgn(den) == 0) throw Error(ErrorKind::InvalidInput, "zero denominator in '" + std::string(text) + "'");
  return Rational(num / den);
}

std::string to_string(const Rational& x) { return x.get_str(); }

std::string format_double(double x) {
  char buf[64];
  for (int precision = 15; precision <= 17; ++precision) {
    std::snprintf(buf, sizeof buf, "%.*g", precision, x);
    if (std::strtod(buf, nullptr) == x) break;
  }
  return buf;
}

}  // namespace ricci
