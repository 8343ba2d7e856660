#include "validus/rule.hpp"

#include <algorithm>
#include <set>

#include "validus/error.hpp"

namespace validus {

RuleSet::RuleSet(std::vector<Rule> rules) : rules_(std::move(rules)) {
  std::set<std::string> seen;
  for (const auto &rule : rules_)
    if (!seen.insert(rule.name).second)
      throw DuplicateRuleName(rule.name);
}

const Rule *RuleSet::find(const std::string &name) const {
  for (const auto &rule : rules_)
    if (rule.name == name)
      return &rule;
  return nullptr;
}

ExprPtr negate(const ExprPtr &expr) {
  if (auto b = expr->as<Binary>()) {
    if (is_comparison(b->op))
      return make_binary(complement(b->op), b->lhs, b->rhs);
    if (b->op == BinaryOp::And)
      return make_binary(BinaryOp::Or, negate(b->lhs), negate(b->rhs));
    if (b->op == BinaryOp::Or)
      return make_binary(BinaryOp::And, negate(b->lhs), negate(b->rhs));
  }
  if (auto u = expr->as<Unary>(); u && u->op == UnaryOp::Not)
    return u->operand;
  if (auto i = expr->as<If>())
    return make_binary(BinaryOp::And, i->condition, negate(i->consequent));
  if (expr->is<NALit>())
    return expr;
  return make_unary(UnaryOp::Not, expr);
}

Rule negate_rule(const Rule &rule) {
  return Rule{rule.name, negate(rule.body), rule.span};
}

SpanReport referenced_signature(const Rule &rule) {
  std::set<std::string> qualifiers;
  bool has_unqualified = false;
  walk(rule.body, [&](const Expr &e, bool) {
    if (auto ref = e.as<VarRef>()) {
      if (ref->table)
        qualifiers.insert(*ref->table);
      else
        has_unqualified = true;
    }
  });
  const std::string home = qualifiers.size() == 1 ? *qualifiers.begin() : kDefaultTable;

  SpanReport report;
  report.tables = qualifiers;
  if (has_unqualified)
    report.tables.insert(home);
  walk(rule.body, [&](const Expr &e, bool) {
    if (auto ref = e.as<VarRef>()) {
      report.variables.emplace(ref->table.value_or(home), ref->variable);
      report.max_lag = std::max(report.max_lag, ref->lag);
    } else if (e.is<Aggregate>()) {
      report.unit_aggregate = true;
    }
  });
  return report;
}

} // namespace validus
