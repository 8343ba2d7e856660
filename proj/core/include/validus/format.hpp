#pragma once

#include <string>

#include "validus/ast.hpp"
#include "validus/rule.hpp"

namespace validus {

/// Canonical DSL text with the minimum parentheses needed for the grammar's
/// precedence; `parse_expression(format_expr(e))` rebuilds `e`.
std::string format_expr(const ExprPtr &expr);

/// `name: expression`
std::string format_rule(const Rule &rule);

/// One rule per line, newline terminated.
std::string format_ruleset(const RuleSet &rules);

} // namespace validus
