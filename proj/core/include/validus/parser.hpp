#pragma once

#include <string>
#include <string_view>

#include "validus/ast.hpp"
#include "validus/rule.hpp"

namespace validus {

/// Parses a rule file (`name: expression`, `#` comments) and type-checks
/// every rule. Throws ParseError, TypeError or DuplicateRuleName.
RuleSet parse_rules(std::string_view text);

/// Parses a single expression without type checking.
ExprPtr parse_expression(std::string_view text);

/// Static type of an expression node.
enum class ExprType {
  Number,  // arithmetic result or number literal
  Text,    // text literal
  Data,    // variable reference: any value kind at run time
  Missing, // NA literal
  Logical,
};

/// Infers the type of `expr`, throwing TypeError (attributed to `rule_name`)
/// on misuse: logical operands in arithmetic, values under and/or/not/if,
/// text in arithmetic or ordering, nested aggregates.
ExprType type_check(const ExprPtr &expr, const std::string &rule_name);

} // namespace validus
