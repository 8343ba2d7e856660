#include "validus/rational.hpp"

#include <cctype>

namespace validus {

namespace mp = boost::multiprecision;

std::optional<Rational> parse_decimal(std::string_view text) {
  std::size_t pos = 0;
  bool negative = false;
  if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
    negative = text[pos] == '-';
    ++pos;
  }

  Integer digits = 0;
  long scale = 0;
  std::size_t digit_count = 0;
  while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
    digits = digits * 10 + (text[pos] - '0');
    ++pos;
    ++digit_count;
  }
  if (pos < text.size() && text[pos] == '.') {
    ++pos;
    std::size_t fraction_digits = 0;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
      digits = digits * 10 + (text[pos] - '0');
      ++pos;
      ++fraction_digits;
    }
    if (fraction_digits == 0)
      return std::nullopt;
    digit_count += fraction_digits;
    scale -= static_cast<long>(fraction_digits);
  }
  if (digit_count == 0)
    return std::nullopt;

  if (pos < text.size() && (text[pos] == 'e' || text[pos] == 'E')) {
    ++pos;
    bool exp_negative = false;
    if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
      exp_negative = text[pos] == '-';
      ++pos;
    }
    long exponent = 0;
    std::size_t exp_digits = 0;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
      exponent = exponent * 10 + (text[pos] - '0');
      if (exponent > 100000)
        return std::nullopt;
      ++pos;
      ++exp_digits;
    }
    if (exp_digits == 0)
      return std::nullopt;
    scale += exp_negative ? -exponent : exponent;
  }
  if (pos != text.size())
    return std::nullopt;

  Rational value(digits);
  const Integer power = mp::pow(Integer(10), static_cast<unsigned>(scale < 0 ? -scale : scale));
  if (scale > 0)
    value *= power;
  else if (scale < 0)
    value /= power;
  return negative ? Rational(-value) : value;
}

bool has_finite_decimal(const Rational &value) {
  Integer den = mp::denominator(value);
  while (den % 2 == 0)
    den /= 2;
  while (den % 5 == 0)
    den /= 5;
  return den == 1;
}

std::string to_string(const Rational &value) {
  const Integer num = mp::numerator(value);
  const Integer den = mp::denominator(value);
  if (den == 1)
    return num.str();
  if (!has_finite_decimal(value))
    return num.str() + "/" + den.str();

  // Scale by 10^k until the value becomes integral.
  unsigned places = 0;
  Integer power = 1;
  while (true) {
    ++places;
    power *= 10;
    if (power % den == 0)
      break;
  }
  Integer scaled = mp::abs(num) * (power / den);
  std::string digits = scaled.str();
  if (digits.size() <= places)
    digits.insert(0, places - digits.size() + 1, '0');
  digits.insert(digits.size() - places, ".");
  return (num < 0 ? "-" : "") + digits;
}

bool is_integral(const Rational &value) {
  return mp::denominator(value) == 1;
}

Integer floor(const Rational &value) {
  const Integer num = mp::numerator(value);
  const Integer den = mp::denominator(value);
  Integer q = num / den;
  if (num % den != 0 && num < 0)
    q -= 1;
  return q;
}

Integer ceil(const Rational &value) {
  const Integer num = mp::numerator(value);
  const Integer den = mp::denominator(value);
  Integer q = num / den;
  if (num % den != 0 && num > 0)
    q += 1;
  return q;
}

} // namespace validus
