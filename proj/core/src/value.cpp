#include "validus/value.hpp"

namespace validus {

Value parse_cell(std::string_view cell) {
  if (cell.empty() || cell == "NA")
    return NA{};
  if (auto number = parse_decimal(cell))
    return *number;
  return std::string(cell);
}

std::string to_string(const Value &value) {
  if (value.is_na())
    return "NA";
  if (value.is_number())
    return to_string(value.number());
  return value.text();
}

} // namespace validus
