#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "validus/constraint.hpp"
#include "validus/linear.hpp"
#include "validus/rule.hpp"
#include "validus/schema.hpp"

namespace validus {

enum class FindingKind {
  Infeasible,
  PartialInfeasibility,
  FixedValue,
  RangeRestriction,
  Redundant,
  Tautology,
  Contradiction,
  NonrelaxingClause,
  NonconstrainingClause,
};

std::string_view to_string(FindingKind kind) noexcept;

/// A satisfiability question whose answer proves a finding: the conjunction
/// of the named rules, the assumptions (DSL conditions, resolved against the
/// `context` rule when set) and the schema domains of every variable used.
struct Probe {
  std::vector<std::string> rules;
  std::vector<std::string> assumptions;
  std::optional<std::string> context;
  bool satisfiable = false;

  friend bool operator==(const Probe &, const Probe &) = default;
};

struct Finding {
  FindingKind kind;
  std::string rule;      // subject rule, empty for variable findings
  std::string variable;  // subject variable, empty for rule findings
  std::string value;     // excluded level or fixed value
  std::optional<Interval> range;
  /// Every probe must reproduce its recorded verdict.
  std::vector<Probe> probes;

  friend bool operator==(const Finding &, const Finding &) = default;
};

/// Re-runs a probe against the rules it names. Returns the verdict.
bool replay(const Probe &probe, const RuleSet &rules, const Schema &schema);

/// Tautology when the negated rule has no solution within the schema
/// domains, Contradiction when the rule itself has none.
std::optional<Finding> lint_rule(const Rule &rule, const Schema &schema);

/// PartialInfeasibility for every declared level a categorical variable can
/// no longer take. Expects a satisfiable system.
std::vector<Finding> detect_partial_infeasibility(const ConstraintSystem &system);

/// Rules implied by all the others together, each tested against the full
/// remainder.
std::vector<Finding> detect_redundant(const RuleSet &rules, const Schema &schema);

/// Bound findings for one variable: FixedValue or RangeRestriction when the
/// rules together pin the variable more tightly than the declared domain
/// and every rule on its own do.
std::optional<Finding> detect_implied_bounds(const RuleSet &rules, const Schema &schema,
                                             const std::string &variable);

struct SkippedRule {
  std::string rule;
  std::string reason;

  friend bool operator==(const SkippedRule &, const SkippedRule &) = default;
};

struct AnalysisReport {
  std::vector<Finding> findings;
  /// Rules left out because they are outside the analyzable fragment.
  std::vector<SkippedRule> skipped;
  bool infeasible = false;
};

/// Lint per rule, then (unless the set is infeasible) partial infeasibility,
/// implied bounds, nonrelaxing/nonconstraining clauses and redundancy.
/// Rules outside the fragment are skipped and reported, not analyzed.
AnalysisReport analyze_ruleset(const RuleSet &rules, const Schema &schema);

struct SimplifyStep {
  FindingKind kind;  // NonrelaxingClause, NonconstrainingClause or Redundant
  std::string rule;
  std::string before;
  std::optional<std::string> after;  // none when the rule was removed
  Probe probe;

  friend bool operator==(const SimplifyStep &, const SimplifyStep &) = default;
};

struct SimplifyResult {
  RuleSet rules;
  std::vector<SimplifyStep> log;
  /// Set when the input is infeasible; the rules are then returned as given.
  std::optional<Finding> infeasible;
};

/// Rewrites to a fixpoint, each round applying the first applicable step in
/// rule order: a conditional whose condition is implied becomes its
/// consequent, a conditional whose consequent is implied becomes its
/// consequent, an implied rule is dropped. The solution set is unchanged.
/// Throws UnsupportedForAnalysis.
SimplifyResult simplify_ruleset(const RuleSet &rules, const Schema &schema);

} // namespace validus
