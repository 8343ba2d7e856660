#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "validus/ast.hpp"

namespace validus {

struct SourceSpan {
  std::size_t line = 0;
  std::size_t column = 0;
};

struct Rule {
  std::string name;
  ExprPtr body;
  SourceSpan span;

  /// Structural equality of name and body; the source span is ignored.
  friend bool operator==(const Rule &a, const Rule &b) {
    return a.name == b.name && equal(a.body, b.body);
  }
};

/// Ordered rules with unique names. The conjunction of all rules is what a
/// dataset has to satisfy.
class RuleSet {
public:
  RuleSet() = default;
  /// Throws DuplicateRuleName.
  explicit RuleSet(std::vector<Rule> rules);

  const std::vector<Rule> &rules() const noexcept { return rules_; }
  std::size_t size() const noexcept { return rules_.size(); }
  bool empty() const noexcept { return rules_.empty(); }
  auto begin() const noexcept { return rules_.begin(); }
  auto end() const noexcept { return rules_.end(); }
  const Rule &operator[](std::size_t i) const { return rules_[i]; }

  const Rule *find(const std::string &name) const;

  friend bool operator==(const RuleSet &, const RuleSet &) = default;

private:
  std::vector<Rule> rules_;
};

/// Negation pushed inward: comparisons flip, `and`/`or` swap by De Morgan,
/// `if (C) Q` becomes `C and not Q`, double negation cancels. Other atoms
/// (type predicates, set membership) keep an explicit `not`.
ExprPtr negate(const ExprPtr &expr);

/// The same rule with its body negated; the name is kept.
Rule negate_rule(const Rule &rule);

/// Table label used for unqualified references in span reports.
inline constexpr const char *kDefaultTable = "default";

/// Which parts of the key a rule touches.
struct SpanReport {
  std::set<std::string> tables;
  /// Distinct (table, variable) pairs; lags of one variable count once.
  std::set<std::pair<std::string, std::string>> variables;
  bool unit_aggregate = false;
  unsigned max_lag = 0;

  friend bool operator==(const SpanReport &, const SpanReport &) = default;
};

/// Unqualified references belong to the rule's single qualified table when
/// there is exactly one, otherwise to `kDefaultTable`.
SpanReport referenced_signature(const Rule &rule);

} // namespace validus
