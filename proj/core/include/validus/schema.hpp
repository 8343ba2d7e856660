#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "validus/rational.hpp"
#include "validus/tribool.hpp"
#include "validus/value.hpp"

namespace validus {

enum class VariableKind { Numeric, Integer, Categorical };

std::string_view to_string(VariableKind kind) noexcept;

/// Closed interval [low, high].
struct Bounds {
  Rational low;
  Rational high;

  friend bool operator==(const Bounds &, const Bounds &) = default;
};

struct VariableDecl {
  std::string name;
  VariableKind kind = VariableKind::Numeric;
  std::optional<Bounds> bounds;     // numeric and integer only
  std::vector<std::string> levels;  // categorical only, declaration order
  bool nullable = false;

  bool is_numeric() const noexcept { return kind != VariableKind::Categorical; }

  friend bool operator==(const VariableDecl &, const VariableDecl &) = default;
};

struct Schema {
  std::map<std::string, std::vector<VariableDecl>> tables;
  std::string unit_column = "id";
  std::optional<std::string> time_column = "time";

  const VariableDecl *find(const std::string &table, const std::string &variable) const;

  /// Tables declaring `variable`, in table-name order.
  std::vector<std::string> tables_with(const std::string &variable) const;
};

/// Parses the line-oriented schema format:
///
///     # comment
///     @unit id
///     @time year
///     person.age : integer [0, 150] nullable
///     person.income : numeric
///     person.job : categorical {employed, unemployed}
///
/// `@unit`/`@time` override the default record columns (`id`, `time`);
/// `@time none` declares tables without a time dimension.
Schema parse_schema(std::string_view text);

/// Domain membership of one value. Never returns NA: a missing value is
/// accepted exactly when the variable is nullable.
TriBool check_domain(const Value &value, const VariableDecl &decl);

} // namespace validus
