#include "validus/constraint.hpp"

#include <algorithm>
#include <set>

#include "validus/error.hpp"
#include "validus/format.hpp"

namespace validus {

std::string_view to_string(Relation relation) noexcept {
  switch (relation) {
  case Relation::Lt: return "<";
  case Relation::Le: return "<=";
  case Relation::Eq: return "==";
  case Relation::Ge: return ">=";
  case Relation::Gt: return ">";
  case Relation::Ne: return "!=";
  }
  return "?";
}

Relation complement(Relation relation) noexcept {
  switch (relation) {
  case Relation::Lt: return Relation::Ge;
  case Relation::Le: return Relation::Gt;
  case Relation::Eq: return Relation::Ne;
  case Relation::Ge: return Relation::Lt;
  case Relation::Gt: return Relation::Le;
  case Relation::Ne: return Relation::Eq;
  }
  return relation;
}

namespace {

Relation mirrored(Relation relation) {
  switch (relation) {
  case Relation::Lt: return Relation::Gt;
  case Relation::Le: return Relation::Ge;
  case Relation::Ge: return Relation::Le;
  case Relation::Gt: return Relation::Lt;
  default: return relation;
  }
}

bool holds(const Rational &lhs, Relation relation, const Rational &rhs) {
  switch (relation) {
  case Relation::Lt: return lhs < rhs;
  case Relation::Le: return lhs <= rhs;
  case Relation::Eq: return lhs == rhs;
  case Relation::Ge: return lhs >= rhs;
  case Relation::Gt: return lhs > rhs;
  case Relation::Ne: return lhs != rhs;
  }
  return false;
}

Relation relation_of(BinaryOp op) {
  switch (op) {
  case BinaryOp::Lt: return Relation::Lt;
  case BinaryOp::Le: return Relation::Le;
  case BinaryOp::Eq: return Relation::Eq;
  case BinaryOp::Ge: return Relation::Ge;
  case BinaryOp::Gt: return Relation::Gt;
  default: return Relation::Ne;
  }
}

BinaryOp op_of(Relation relation) {
  switch (relation) {
  case Relation::Lt: return BinaryOp::Lt;
  case Relation::Le: return BinaryOp::Le;
  case Relation::Eq: return BinaryOp::Eq;
  case Relation::Ge: return BinaryOp::Ge;
  case Relation::Gt: return BinaryOp::Gt;
  case Relation::Ne: return BinaryOp::Ne;
  }
  return BinaryOp::Ne;
}

ExprPtr var_expr(const std::string &name) {
  const auto dot = name.find('.');
  if (dot == std::string::npos)
    return make_var(name);
  return make_var(name.substr(dot + 1), 0, name.substr(0, dot));
}

} // namespace

LinearAtom normalize(LinearAtom atom) {
  std::erase_if(atom.coefficients, [](const auto &entry) { return entry.second == 0; });
  if (atom.coefficients.empty())
    return atom;
  const Rational lead = atom.coefficients.begin()->second;
  for (auto &[name, c] : atom.coefficients)
    c /= lead;
  atom.constant /= lead;
  if (lead < 0)
    atom.relation = mirrored(atom.relation);
  return atom;
}

std::string to_string(const Atom &atom) {
  if (const auto *cat = std::get_if<CategoricalAtom>(&atom)) {
    if (cat->allowed.size() == 1)
      return format_expr(
          make_binary(BinaryOp::Eq, var_expr(cat->variable), make_text(cat->allowed.front())));
    std::vector<ExprPtr> args{var_expr(cat->variable)};
    for (const auto &level : cat->allowed)
      args.push_back(make_text(level));
    return format_expr(make_builtin(BuiltinFn::InSet, std::move(args)));
  }
  const auto &lin = std::get<LinearAtom>(atom);
  ExprPtr sum;
  for (const auto &[name, c] : lin.coefficients) {
    const Rational magnitude = abs(c);
    ExprPtr term = var_expr(name);
    if (magnitude != 1)
      term = make_binary(BinaryOp::Mul, make_number(magnitude), term);
    if (!sum)
      sum = c < 0 ? make_unary(UnaryOp::Neg, term) : term;
    else
      sum = make_binary(c < 0 ? BinaryOp::Sub : BinaryOp::Add, sum, term);
  }
  if (!sum)
    sum = make_number(0);
  return format_expr(make_binary(op_of(lin.relation), sum, make_number(lin.constant)));
}

std::string to_string(const Clause &clause) {
  if (clause.disjuncts.empty())
    return "false";
  std::string out;
  for (const auto &atom : clause.disjuncts) {
    if (!out.empty())
      out += " or ";
    out += to_string(atom);
  }
  return out;
}

void ConstraintSystem::conjoin(const ConstraintSystem &other) {
  clauses.insert(clauses.end(), other.clauses.begin(), other.clauses.end());
  numeric_vars.insert(other.numeric_vars.begin(), other.numeric_vars.end());
  categorical_vars.insert(other.categorical_vars.begin(), other.categorical_vars.end());
}

void ConstraintSystem::add_domain_clauses() {
  for (const auto &[name, bounds] : numeric_vars) {
    if (!bounds)
      continue;
    clauses.push_back({{LinearAtom{{{name, 1}}, Relation::Ge, bounds->low}}, "schema"});
    clauses.push_back({{LinearAtom{{{name, 1}}, Relation::Le, bounds->high}}, "schema"});
  }
}

std::string analysis_name(const Schema &schema, const std::string &table,
                          const std::string &variable) {
  if (schema.tables_with(variable).size() <= 1)
    return variable;
  return table + "." + variable;
}

namespace {

/// Conjunction of clauses; `{}` is true, `{{}}` is false.
using Cnf = std::vector<std::vector<Atom>>;

const Cnf kTrue{};
const Cnf kFalse{{}};

struct Linear {
  std::map<std::string, Rational> coefficients;
  Rational constant;
};

class Compiler {
public:
  Compiler(const Rule &rule, const Schema &schema) : rule_(rule), schema_(schema) {
    resolve_home();
  }

  ConstraintSystem run(const ExprPtr &expr, bool negated) {
    ConstraintSystem out;
    for (auto &disjuncts : cnf(expr, !negated))
      out.clauses.push_back({std::move(disjuncts), rule_.name});
    out.numeric_vars = std::move(numeric_);
    out.categorical_vars = std::move(categorical_);
    return out;
  }

private:
  [[noreturn]] void unsupported(const std::string &reason) const {
    throw UnsupportedForAnalysis(rule_.name, reason);
  }

  void resolve_home() {
    std::set<std::string> qualifiers;
    std::vector<std::string> unqualified;
    walk(rule_.body, [&](const Expr &e, bool) {
      if (e.is<Aggregate>())
        unsupported("aggregates are not analyzable");
      if (const auto *ref = e.as<VarRef>()) {
        if (ref->lag > 0)
          unsupported("lagged references are not analyzable");
        if (ref->table)
          qualifiers.insert(*ref->table);
        else
          unqualified.push_back(ref->variable);
      }
    });
    if (qualifiers.size() > 1)
      unsupported("references span several tables");
    if (qualifiers.size() == 1) {
      home_ = *qualifiers.begin();
      return;
    }
    if (unqualified.empty())
      return;
    std::optional<std::set<std::string>> candidates;
    for (const auto &name : unqualified) {
      const auto tables = schema_.tables_with(name);
      if (tables.empty())
        throw UnknownVariable(rule_.name, name);
      std::set<std::string> these(tables.begin(), tables.end());
      if (!candidates) {
        candidates = these;
      } else {
        std::set<std::string> both;
        std::ranges::set_intersection(*candidates, these, std::inserter(both, both.begin()));
        candidates = both;
      }
    }
    if (candidates->empty())
      unsupported("references span several tables");
    if (candidates->size() > 1)
      throw UnknownVariable(rule_.name,
                            unqualified.front() + " (ambiguous: declared in several tables)");
    home_ = *candidates->begin();
  }

  struct Resolved {
    std::string name;
    const VariableDecl *decl;
  };

  Resolved resolve(const VarRef &ref) {
    const std::string table = ref.table ? *ref.table : home_.value_or("");
    const VariableDecl *decl = schema_.find(table, ref.variable);
    if (!decl)
      throw UnknownVariable(rule_.name,
                            ref.table ? *ref.table + "." + ref.variable : ref.variable);
    Resolved out{analysis_name(schema_, table, ref.variable), decl};
    if (decl->is_numeric())
      numeric_.emplace(out.name, decl->bounds);
    else
      categorical_.emplace(out.name, decl->levels);
    return out;
  }

  // Logical structure -----------------------------------------------------

  static Cnf conjunction(Cnf a, const Cnf &b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
  }

  static Cnf disjunction(const Cnf &a, const Cnf &b) {
    Cnf out;
    for (const auto &x : a) {
      for (const auto &y : b) {
        auto merged = x;
        for (const auto &atom : y)
          if (std::ranges::find(merged, atom) == merged.end())
            merged.push_back(atom);
        out.push_back(std::move(merged));
      }
    }
    return out;
  }

  Cnf cnf(const ExprPtr &expr, bool positive) {
    if (const auto *u = expr->as<Unary>()) {
      if (u->op == UnaryOp::Not)
        return cnf(u->operand, !positive);
      unsupported("value expression used as a condition");
    }
    if (const auto *i = expr->as<If>()) {
      if (positive)
        return disjunction(cnf(i->condition, false), cnf(i->consequent, true));
      return conjunction(cnf(i->condition, true), cnf(i->consequent, false));
    }
    if (const auto *b = expr->as<Binary>()) {
      if (b->op == BinaryOp::And || b->op == BinaryOp::Or) {
        const bool conjunctive = (b->op == BinaryOp::And) == positive;
        auto lhs = cnf(b->lhs, positive);
        auto rhs = cnf(b->rhs, positive);
        return conjunctive ? conjunction(std::move(lhs), rhs) : disjunction(lhs, rhs);
      }
      if (is_comparison(b->op))
        return comparison(*b, positive);
      unsupported("value expression used as a condition");
    }
    if (const auto *call = expr->as<Builtin>()) {
      if (call->fn == BuiltinFn::InSet)
        return membership(*call, positive);
      unsupported(std::string(to_string(call->fn)) + " is not analyzable");
    }
    if (expr->is<NALit>())
      unsupported("NA literals are not analyzable");
    unsupported("value expression used as a condition");
  }

  // Atoms -------------------------------------------------------------------

  Cnf literal(Atom atom) {
    if (auto *lin = std::get_if<LinearAtom>(&atom)) {
      *lin = normalize(std::move(*lin));
      if (lin->coefficients.empty())
        return holds(0, lin->relation, lin->constant) ? kTrue : kFalse;
      if (lin->relation == Relation::Ne) {
        auto below = *lin, above = *lin;
        below.relation = Relation::Lt;
        above.relation = Relation::Gt;
        return {{below, above}};
      }
      return {{std::move(atom)}};
    }
    const auto &cat = std::get<CategoricalAtom>(atom);
    if (cat.allowed.empty())
      return kFalse;
    if (cat.allowed.size() == categorical_.at(cat.variable).size())
      return kTrue;
    return {{std::move(atom)}};
  }

  /// Levels of `variable` selected (or, when `keep` is false, not selected)
  /// by `chosen`, in declaration order.
  CategoricalAtom levels(const std::string &variable, const std::set<std::string> &chosen,
                         bool keep) {
    CategoricalAtom out{variable, {}};
    for (const auto &level : categorical_.at(variable))
      if (chosen.contains(level) == keep)
        out.allowed.push_back(level);
    return out;
  }

  std::optional<Resolved> categorical_ref(const ExprPtr &expr) {
    if (const auto *ref = expr->as<VarRef>()) {
      auto resolved = resolve(*ref);
      if (!resolved.decl->is_numeric())
        return resolved;
    }
    return std::nullopt;
  }

  static std::optional<std::string> level_text(const ExprPtr &expr) {
    if (const auto *t = expr->as<TextLit>())
      return t->value;
    if (const auto *n = expr->as<NumberLit>())
      return validus::to_string(n->value);
    return std::nullopt;
  }

  Cnf comparison(const Binary &b, bool positive) {
    const Relation relation =
        positive ? relation_of(b.op) : complement(relation_of(b.op));
    const auto lcat = categorical_ref(b.lhs);
    const auto rcat = categorical_ref(b.rhs);
    if (lcat || rcat) {
      if (lcat && rcat)
        unsupported("comparison between two categorical variables");
      if (relation != Relation::Eq && relation != Relation::Ne)
        unsupported("ordered comparison of a categorical variable");
      const auto &var = lcat ? *lcat : *rcat;
      const auto text = level_text(lcat ? b.rhs : b.lhs);
      if (!text)
        unsupported("categorical variable compared with a computed value");
      return literal(levels(var.name, {*text}, relation == Relation::Eq));
    }
    if (b.lhs->is<TextLit>() || b.rhs->is<TextLit>()) {
      const auto *l = b.lhs->as<TextLit>();
      const auto *r = b.rhs->as<TextLit>();
      if (!l || !r)
        unsupported("numeric value compared with text");
      if (relation != Relation::Eq && relation != Relation::Ne)
        unsupported("ordered comparison of text");
      return (l->value == r->value) == (relation == Relation::Eq) ? kTrue : kFalse;
    }
    const Linear lhs = linear(b.lhs);
    const Linear rhs = linear(b.rhs);
    LinearAtom atom{lhs.coefficients, relation, rhs.constant - lhs.constant};
    for (const auto &[name, c] : rhs.coefficients)
      atom.coefficients[name] -= c;
    return literal(std::move(atom));
  }

  Cnf membership(const Builtin &call, bool positive) {
    const ExprPtr &subject = call.args.front();
    if (auto var = categorical_ref(subject)) {
      std::set<std::string> chosen;
      for (std::size_t i = 1; i < call.args.size(); ++i)
        if (auto text = level_text(call.args[i]))
          chosen.insert(*text);
      return literal(levels(var->name, chosen, positive));
    }
    // Numeric membership: a disjunction of equalities.
    const Linear value = linear(subject);
    Cnf out = positive ? kFalse : kTrue;
    for (std::size_t i = 1; i < call.args.size(); ++i) {
      const auto *n = call.args[i]->as<NumberLit>();
      if (!n)
        continue;
      LinearAtom atom{value.coefficients, positive ? Relation::Eq : Relation::Ne,
                      n->value - value.constant};
      auto one = literal(std::move(atom));
      out = positive ? disjunction(out, one) : conjunction(std::move(out), one);
    }
    return out;
  }

  // Arithmetic --------------------------------------------------------------

  static bool is_constant(const Linear &l) {
    return std::ranges::all_of(l.coefficients, [](const auto &e) { return e.second == 0; });
  }

  static Linear scaled(Linear l, const Rational &by) {
    for (auto &[name, c] : l.coefficients)
      c *= by;
    l.constant *= by;
    return l;
  }

  Linear linear(const ExprPtr &expr) {
    if (const auto *n = expr->as<NumberLit>())
      return {{}, n->value};
    if (const auto *ref = expr->as<VarRef>()) {
      auto resolved = resolve(*ref);
      if (!resolved.decl->is_numeric())
        unsupported("categorical variable in arithmetic");
      return {{{resolved.name, 1}}, 0};
    }
    if (const auto *u = expr->as<Unary>()) {
      if (u->op == UnaryOp::Neg)
        return scaled(linear(u->operand), -1);
      if (u->op == UnaryOp::Abs)
        unsupported("abs is not linear");
    }
    if (const auto *b = expr->as<Binary>()) {
      switch (b->op) {
      case BinaryOp::Add:
      case BinaryOp::Sub: {
        Linear lhs = linear(b->lhs);
        const Linear rhs = scaled(linear(b->rhs), b->op == BinaryOp::Add ? 1 : -1);
        for (const auto &[name, c] : rhs.coefficients)
          lhs.coefficients[name] += c;
        lhs.constant += rhs.constant;
        return lhs;
      }
      case BinaryOp::Mul: {
        const Linear lhs = linear(b->lhs);
        const Linear rhs = linear(b->rhs);
        if (is_constant(lhs))
          return scaled(rhs, lhs.constant);
        if (is_constant(rhs))
          return scaled(lhs, rhs.constant);
        unsupported("product of variables is not linear");
      }
      case BinaryOp::Div: {
        const Linear rhs = linear(b->rhs);
        if (!is_constant(rhs))
          unsupported("variable in a divisor is not linear");
        if (rhs.constant == 0)
          unsupported("division by zero");
        return scaled(linear(b->lhs), 1 / rhs.constant);
      }
      default:
        break;
      }
    }
    if (expr->is<NALit>())
      unsupported("NA literals are not analyzable");
    if (expr->is<TextLit>())
      unsupported("text in arithmetic");
    unsupported("expression is not a linear term");
  }

  const Rule &rule_;
  const Schema &schema_;
  std::optional<std::string> home_;
  std::map<std::string, std::optional<Bounds>> numeric_;
  std::map<std::string, std::vector<std::string>> categorical_;
};

} // namespace

ConstraintSystem compile_expr(const ExprPtr &expr, const Rule &rule, const Schema &schema,
                              bool negated) {
  return Compiler(rule, schema).run(expr, negated);
}

ConstraintSystem compile_rules(std::span<const Rule> rules, const Schema &schema) {
  ConstraintSystem out;
  for (const auto &rule : rules)
    out.conjoin(compile_expr(rule.body, rule, schema));
  out.add_domain_clauses();
  return out;
}

ConstraintSystem compile_rules(const RuleSet &rules, const Schema &schema) {
  return compile_rules(std::span<const Rule>(rules.rules()), schema);
}

} // namespace validus
