#include "validus/analyzer.hpp"

#include <algorithm>

#include "validus/error.hpp"
#include "validus/format.hpp"
#include "validus/parser.hpp"
#include "validus/solver.hpp"

namespace validus {

std::string_view to_string(FindingKind kind) noexcept {
  switch (kind) {
  case FindingKind::Infeasible: return "Infeasible";
  case FindingKind::PartialInfeasibility: return "PartialInfeasibility";
  case FindingKind::FixedValue: return "FixedValue";
  case FindingKind::RangeRestriction: return "RangeRestriction";
  case FindingKind::Redundant: return "Redundant";
  case FindingKind::Tautology: return "Tautology";
  case FindingKind::Contradiction: return "Contradiction";
  case FindingKind::NonrelaxingClause: return "NonrelaxingClause";
  case FindingKind::NonconstrainingClause: return "NonconstrainingClause";
  }
  return "?";
}

namespace {

/// Assumptions are compiled from their recorded text so that a replayed
/// probe asks exactly the question the analysis asked.
ConstraintSystem compile_assumption(const std::string &text, const Rule *context,
                                    const Schema &schema) {
  const ExprPtr expr = parse_expression(text);
  if (context)
    return compile_expr(expr, *context, schema);
  return compile_expr(expr, Rule{"assumption", expr, {}}, schema);
}

std::string negated_text(const ExprPtr &expr) { return format_expr(negate(expr)); }

/// Compiled rules of one set, combined on demand into probes.
class Workspace {
public:
  Workspace(std::vector<Rule> rules, const Schema &schema)
      : rules_(std::move(rules)), schema_(schema) {
    for (const auto &rule : rules_)
      compiled_.push_back(compile_expr(rule.body, rule, schema_));
  }

  const std::vector<Rule> &rules() const { return rules_; }
  const Schema &schema() const { return schema_; }

  /// Decides the named rules plus assumptions and records the probe.
  Probe ask(const std::vector<std::size_t> &include, std::vector<std::string> assumptions = {},
            const Rule *context = nullptr) const {
    ConstraintSystem system;
    Probe probe;
    for (const std::size_t i : include) {
      system.conjoin(compiled_[i]);
      probe.rules.push_back(rules_[i].name);
    }
    for (const auto &text : assumptions)
      system.conjoin(compile_assumption(text, context, schema_));
    system.add_domain_clauses();
    probe.assumptions = std::move(assumptions);
    if (context)
      probe.context = context->name;
    probe.satisfiable = is_satisfiable(system).satisfiable;
    return probe;
  }

  std::vector<std::size_t> all() const { return except(rules_.size()); }

  std::vector<std::size_t> except(std::size_t skip) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < rules_.size(); ++i)
      if (i != skip)
        out.push_back(i);
    return out;
  }

  ConstraintSystem system(const std::vector<std::size_t> &include) const {
    ConstraintSystem out;
    for (const std::size_t i : include)
      out.conjoin(compiled_[i]);
    out.add_domain_clauses();
    return out;
  }

  bool mentions(std::size_t i, const std::string &variable) const {
    return compiled_[i].numeric_vars.contains(variable) ||
           compiled_[i].categorical_vars.contains(variable);
  }

private:
  std::vector<Rule> rules_;
  const Schema &schema_;
  std::vector<ConstraintSystem> compiled_;
};

Finding rule_finding(FindingKind kind, const std::string &rule, Probe probe) {
  return {kind, rule, {}, {}, std::nullopt, {std::move(probe)}};
}

std::optional<Finding> lint(const Workspace &ws, std::size_t i) {
  const Rule &rule = ws.rules()[i];
  auto probe = ws.ask({i});
  if (!probe.satisfiable)
    return rule_finding(FindingKind::Contradiction, rule.name, std::move(probe));
  probe = ws.ask({}, {negated_text(rule.body)}, &rule);
  if (!probe.satisfiable)
    return rule_finding(FindingKind::Tautology, rule.name, std::move(probe));
  return std::nullopt;
}

std::optional<Finding> redundant(const Workspace &ws, std::size_t i) {
  const Rule &rule = ws.rules()[i];
  auto probe = ws.ask(ws.except(i), {negated_text(rule.body)}, &rule);
  if (probe.satisfiable)
    return std::nullopt;
  return rule_finding(FindingKind::Redundant, rule.name, std::move(probe));
}

/// NonrelaxingClause or NonconstrainingClause for a conditional rule; the
/// first implies the second, so only the first is reported.
std::optional<Finding> conditional(const Workspace &ws, std::size_t i) {
  const Rule &rule = ws.rules()[i];
  const auto *branch = rule.body->as<If>();
  if (!branch)
    return std::nullopt;
  auto probe = ws.ask(ws.all(), {negated_text(branch->condition)}, &rule);
  if (!probe.satisfiable)
    return rule_finding(FindingKind::NonrelaxingClause, rule.name, std::move(probe));
  probe = ws.ask(ws.all(), {negated_text(branch->consequent)}, &rule);
  if (!probe.satisfiable)
    return rule_finding(FindingKind::NonconstrainingClause, rule.name, std::move(probe));
  return std::nullopt;
}

Interval declared_domain(const ConstraintSystem &system, const std::string &variable) {
  const auto it = system.numeric_vars.find(variable);
  if (it == system.numeric_vars.end() || !it->second)
    return Interval::everything();
  return {false, Endpoint{it->second->low, false}, Endpoint{it->second->high, false}};
}

std::optional<Finding> bounds(const Workspace &ws, const std::string &variable) {
  const auto whole = ws.system(ws.all());
  if (!whole.numeric_vars.contains(variable))
    return std::nullopt;
  const Interval implied = implied_bounds(whole, variable);
  if (implied.empty)
    return std::nullopt;
  Interval individually = declared_domain(whole, variable);
  for (std::size_t i = 0; i < ws.rules().size(); ++i)
    if (ws.mentions(i, variable))
      individually = individually.intersect(implied_bounds(ws.system({i}), variable));
  if (implied == individually)
    return std::nullopt;

  // One refuting probe per finite endpoint.
  std::vector<Probe> probes;
  auto refute = [&](Relation relation, const Rational &at) {
    const std::string text = to_string(Atom{LinearAtom{{{variable, 1}}, relation, at}});
    probes.push_back(ws.ask(ws.all(), {text}));
  };
  if (implied.low)
    refute(implied.low->open ? Relation::Le : Relation::Lt, implied.low->value);
  if (implied.high)
    refute(implied.high->open ? Relation::Ge : Relation::Gt, implied.high->value);

  Finding out{FindingKind::RangeRestriction, {}, variable, {}, implied, std::move(probes)};
  if (implied.is_point()) {
    out.kind = FindingKind::FixedValue;
    out.value = to_string(implied.low->value);
  }
  return out;
}

std::vector<Finding> partial_infeasibility(const ConstraintSystem &system,
                                           const std::vector<std::string> &rule_names) {
  std::vector<Finding> out;
  for (const auto &[variable, levels] : system.categorical_vars) {
    for (const auto &level : levels) {
      const CategoricalAtom atom{variable, {level}};
      ConstraintSystem probe_system = system;
      probe_system.clauses.push_back({{atom}, "assumption"});
      if (is_satisfiable(probe_system).satisfiable)
        continue;
      Probe probe{rule_names, {to_string(Atom{atom})}, std::nullopt, false};
      out.push_back({FindingKind::PartialInfeasibility, {}, variable, level, std::nullopt,
                     {std::move(probe)}});
    }
  }
  return out;
}

std::vector<std::string> origins(const ConstraintSystem &system) {
  std::vector<std::string> out;
  for (const auto &clause : system.clauses)
    if (clause.origin != "schema" && std::ranges::find(out, clause.origin) == out.end())
      out.push_back(clause.origin);
  return out;
}

Finding infeasible_finding(const Workspace &ws) {
  return {FindingKind::Infeasible, {}, {}, {}, std::nullopt, {ws.ask(ws.all())}};
}

} // namespace

bool replay(const Probe &probe, const RuleSet &rules, const Schema &schema) {
  ConstraintSystem system;
  for (const auto &name : probe.rules) {
    const Rule *rule = rules.find(name);
    if (!rule)
      throw Error("UnknownRule", "probe names unknown rule " + name);
    system.conjoin(compile_expr(rule->body, *rule, schema));
  }
  const Rule *context = probe.context ? rules.find(*probe.context) : nullptr;
  for (const auto &text : probe.assumptions)
    system.conjoin(compile_assumption(text, context, schema));
  system.add_domain_clauses();
  return is_satisfiable(system).satisfiable;
}

std::optional<Finding> lint_rule(const Rule &rule, const Schema &schema) {
  return lint(Workspace({rule}, schema), 0);
}

std::vector<Finding> detect_partial_infeasibility(const ConstraintSystem &system) {
  return partial_infeasibility(system, origins(system));
}

std::vector<Finding> detect_redundant(const RuleSet &rules, const Schema &schema) {
  const Workspace ws(rules.rules(), schema);
  std::vector<Finding> out;
  for (std::size_t i = 0; i < rules.size(); ++i)
    if (auto finding = redundant(ws, i))
      out.push_back(std::move(*finding));
  return out;
}

std::optional<Finding> detect_implied_bounds(const RuleSet &rules, const Schema &schema,
                                             const std::string &variable) {
  return bounds(Workspace(rules.rules(), schema), variable);
}

AnalysisReport analyze_ruleset(const RuleSet &rules, const Schema &schema) {
  AnalysisReport report;
  std::vector<Rule> analyzable;
  for (const auto &rule : rules) {
    try {
      (void)compile_expr(rule.body, rule, schema);
      analyzable.push_back(rule);
    } catch (const UnsupportedForAnalysis &e) {
      report.skipped.push_back({rule.name, e.reason()});
    }
  }
  const Workspace ws(std::move(analyzable), schema);
  const std::size_t n = ws.rules().size();

  std::vector<bool> tautology(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    if (auto finding = lint(ws, i)) {
      tautology[i] = finding->kind == FindingKind::Tautology;
      report.findings.push_back(std::move(*finding));
    }
  }

  const auto whole = ws.system(ws.all());
  if (!is_satisfiable(whole).satisfiable) {
    report.infeasible = true;
    report.findings.push_back(infeasible_finding(ws));
    return report;
  }

  std::vector<std::string> names;
  for (const auto &rule : ws.rules())
    names.push_back(rule.name);
  for (auto &finding : partial_infeasibility(whole, names))
    report.findings.push_back(std::move(finding));

  for (const auto &[variable, domain] : whole.numeric_vars)
    if (auto finding = bounds(ws, variable))
      report.findings.push_back(std::move(*finding));

  for (std::size_t i = 0; i < n; ++i)
    if (auto finding = conditional(ws, i))
      report.findings.push_back(std::move(*finding));

  // A tautology is trivially implied by anything; its lint finding says more.
  for (std::size_t i = 0; i < n; ++i)
    if (!tautology[i])
      if (auto finding = redundant(ws, i))
        report.findings.push_back(std::move(*finding));

  return report;
}

SimplifyResult simplify_ruleset(const RuleSet &rules, const Schema &schema) {
  SimplifyResult result;
  std::vector<Rule> current = rules.rules();
  {
    const Workspace ws(current, schema);
    if (!is_satisfiable(ws.system(ws.all())).satisfiable) {
      result.rules = rules;
      result.infeasible = infeasible_finding(ws);
      return result;
    }
  }

  for (bool changed = true; changed;) {
    changed = false;
    const Workspace ws(current, schema);
    for (std::size_t i = 0; i < current.size() && !changed; ++i) {
      const Rule &rule = current[i];
      SimplifyStep step{FindingKind::Redundant, rule.name, format_expr(rule.body), std::nullopt,
                        {}};
      if (const auto *branch = rule.body->as<If>()) {
        for (const auto &[kind, part] :
             {std::pair{FindingKind::NonrelaxingClause, branch->condition},
              std::pair{FindingKind::NonconstrainingClause, branch->consequent}}) {
          auto probe = ws.ask(ws.all(), {negated_text(part)}, &rule);
          if (probe.satisfiable)
            continue;
          step.kind = kind;
          step.after = format_expr(branch->consequent);
          step.probe = std::move(probe);
          current[i] = Rule{rule.name, branch->consequent, rule.span};
          changed = true;
          break;
        }
      }
      if (!changed) {
        if (auto finding = redundant(ws, i)) {
          step.probe = std::move(finding->probes.front());
          current.erase(current.begin() + static_cast<std::ptrdiff_t>(i));
          changed = true;
        }
      }
      if (changed)
        result.log.push_back(std::move(step));
    }
  }
  result.rules = RuleSet(std::move(current));
  return result;
}

} // namespace validus
