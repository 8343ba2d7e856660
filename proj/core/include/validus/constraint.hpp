#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "validus/rational.hpp"
#include "validus/rule.hpp"
#include "validus/schema.hpp"

namespace validus {

enum class Relation { Lt, Le, Eq, Ge, Gt, Ne };

std::string_view to_string(Relation relation) noexcept;
Relation complement(Relation relation) noexcept;

/// `sum(coefficients[v] * v) relation constant`. Built atoms are scaled so
/// the first coefficient (in variable order) is +1, so equal constraints
/// compare equal.
struct LinearAtom {
  std::map<std::string, Rational> coefficients;
  Relation relation = Relation::Ge;
  Rational constant;

  friend bool operator==(const LinearAtom &, const LinearAtom &) = default;
};

/// `variable` takes one of `allowed` (schema declaration order).
struct CategoricalAtom {
  std::string variable;
  std::vector<std::string> allowed;

  friend bool operator==(const CategoricalAtom &, const CategoricalAtom &) = default;
};

using Atom = std::variant<LinearAtom, CategoricalAtom>;

/// Disjunction of atoms. A clause without disjuncts is false; it is kept
/// rather than rejected so that constant-false rules stay representable.
struct Clause {
  std::vector<Atom> disjuncts;
  std::string origin;

  friend bool operator==(const Clause &, const Clause &) = default;
};

struct ConstraintSystem {
  std::vector<Clause> clauses;
  std::map<std::string, std::optional<Bounds>> numeric_vars;
  std::map<std::string, std::vector<std::string>> categorical_vars;

  /// Appends the clauses of `other` and merges its variables.
  void conjoin(const ConstraintSystem &other);

  /// Unit clauses for the declared bounds of every numeric variable,
  /// with origin `schema`. Call once, after the last conjoin.
  void add_domain_clauses();

  friend bool operator==(const ConstraintSystem &, const ConstraintSystem &) = default;
};

LinearAtom normalize(LinearAtom atom);

std::string to_string(const Atom &atom);
std::string to_string(const Clause &clause);

/// Name used for a schema variable inside constraint systems: the bare name
/// when only one table declares it, `table.variable` otherwise.
std::string analysis_name(const Schema &schema, const std::string &table,
                          const std::string &variable);

/// Clauses for `expr` (negated when asked), an expression taken from `rule`.
/// Unqualified references resolve against the rule's table. No domain
/// clauses are added. Throws UnsupportedForAnalysis and UnknownVariable.
ConstraintSystem compile_expr(const ExprPtr &expr, const Rule &rule, const Schema &schema,
                              bool negated = false);

/// Conjunction of all rules plus the schema bounds of their variables.
ConstraintSystem compile_rules(std::span<const Rule> rules, const Schema &schema);
ConstraintSystem compile_rules(const RuleSet &rules, const Schema &schema);

} // namespace validus
