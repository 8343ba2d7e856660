#pragma once

#include <optional>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace validus {

/// Exact arbitrary-precision rational. All numeric data and rule constants
/// use this type so evaluation and analysis compare values identically.
using Rational = boost::multiprecision::cpp_rational;
using Integer = boost::multiprecision::cpp_int;

/// Parses a decimal literal: optional sign, digits, optional fraction,
/// optional exponent (`-12.50`, `1e3`, `2.5E-2`). Returns nullopt when the
/// whole string is not such a literal.
std::optional<Rational> parse_decimal(std::string_view text);

/// True when the value has a finite decimal expansion.
bool has_finite_decimal(const Rational &value);

/// Shortest exact decimal rendering (`33.5`, `-2`, `0.125`). Values without a
/// finite expansion render as `n/d`.
std::string to_string(const Rational &value);

bool is_integral(const Rational &value);

Integer floor(const Rational &value);
Integer ceil(const Rational &value);

} // namespace validus
