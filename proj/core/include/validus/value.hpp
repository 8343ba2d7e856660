#pragma once

#include <string>
#include <string_view>
#include <variant>

#include "validus/rational.hpp"

namespace validus {

/// Missing-value marker.
struct NA {
  friend bool operator==(NA, NA) noexcept { return true; }
};

/// A data value: an exact number, a text, or NA. Values of the "wrong" type
/// for a variable are representable; domain checks happen in validation.
class Value {
public:
  Value() : data_(NA{}) {}
  Value(NA) : data_(NA{}) {}
  Value(Rational number) : data_(std::move(number)) {}
  Value(int number) : data_(Rational(number)) {}
  Value(std::string text) : data_(std::move(text)) {}
  Value(const char *text) : data_(std::string(text)) {}

  bool is_na() const noexcept { return std::holds_alternative<NA>(data_); }
  bool is_number() const noexcept { return std::holds_alternative<Rational>(data_); }
  bool is_text() const noexcept { return std::holds_alternative<std::string>(data_); }

  const Rational &number() const { return std::get<Rational>(data_); }
  const std::string &text() const { return std::get<std::string>(data_); }

  friend bool operator==(const Value &, const Value &) = default;

private:
  std::variant<NA, Rational, std::string> data_;
};

/// Parses a raw cell: empty or `NA` is NA, a decimal literal is a number,
/// anything else is text.
Value parse_cell(std::string_view cell);

/// Display form; text is shown verbatim, NA as `NA`.
std::string to_string(const Value &value);

} // namespace validus
