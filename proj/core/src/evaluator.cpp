#include "validus/evaluator.hpp"

#include <algorithm>
#include <set>

#include "validus/error.hpp"
#include "validus/format.hpp"

namespace validus {

std::string_view to_string(DiagnosticKind kind) noexcept {
  switch (kind) {
  case DiagnosticKind::TypeMismatch:
    return "TypeMismatch";
  case DiagnosticKind::DivisionByZero:
    return "DivisionByZero";
  case DiagnosticKind::UnresolvedReference:
    return "UnresolvedReference";
  }
  return "?";
}

namespace {

bool time_less(const std::optional<std::string> &a, const std::optional<std::string> &b) {
  if (!a || !b)
    return !a && b;
  return id_less(*a, *b);
}

} // namespace

DataIndex::DataIndex(const Dataset &dataset) : dataset_(&dataset) {
  std::map<std::string, std::map<std::optional<std::string>, std::set<std::string>>> seen;
  for (const auto &[key, value] : dataset.points())
    seen[key.table][key.time].insert(key.unit);
  for (auto &[name, by_time] : seen) {
    Table &table = tables_[name];
    for (auto &[time, units] : by_time) {
      table.times.push_back(time);
      auto &sorted = table.units_at[time];
      sorted.assign(units.begin(), units.end());
      std::sort(sorted.begin(), sorted.end(), id_less);
    }
    std::sort(table.times.begin(), table.times.end(), time_less);
  }
}

const DataIndex::Table *DataIndex::table(const std::string &name) const {
  auto it = tables_.find(name);
  return it == tables_.end() ? nullptr : &it->second;
}

std::optional<std::size_t>
DataIndex::time_position(const std::string &table, const std::optional<std::string> &time) const {
  const Table *t = this->table(table);
  if (!t)
    return std::nullopt;
  auto it = std::find(t->times.begin(), t->times.end(), time);
  if (it == t->times.end())
    return std::nullopt;
  return static_cast<std::size_t>(it - t->times.begin());
}

namespace {

class Evaluator {
public:
  Evaluator(const EvalOptions &options, std::vector<Diagnostic> *diagnostics)
      : options_(options), diagnostics_(diagnostics) {}

  Value value(const ExprPtr &expr, const Binding &b) {
    return std::visit([&](const auto &node) { return value_of(node, expr, b); }, expr->node);
  }

  TriBool logic(const ExprPtr &expr, const Binding &b) {
    if (auto bin = expr->as<Binary>()) {
      if (bin->op == BinaryOp::And)
        return kleene_and(logic(bin->lhs, b), logic(bin->rhs, b));
      if (bin->op == BinaryOp::Or)
        return kleene_or(logic(bin->lhs, b), logic(bin->rhs, b));
      return compare(bin->op, value(bin->lhs, b), value(bin->rhs, b), expr);
    }
    if (auto u = expr->as<Unary>(); u && u->op == UnaryOp::Not)
      return kleene_not(logic(u->operand, b));
    if (auto i = expr->as<If>())
      return kleene_implies(logic(i->condition, b), logic(i->consequent, b));
    if (auto call = expr->as<Builtin>())
      return builtin(*call, b);
    // NA literal in logical position.
    return TriBool::NA;
  }

private:
  void note(DiagnosticKind kind, std::string message) {
    if (diagnostics_ && options_.diagnostics)
      diagnostics_->push_back({kind, {}, {}, std::move(message)});
  }

  static std::optional<std::string> time_in(const DataIndex &index, const std::string &table,
                                            const std::optional<std::string> &time) {
    const auto *t = index.table(table);
    if (t && t->times.size() == 1 && !t->times.front())
      return std::nullopt;
    return time;
  }

  Value value_of(const NumberLit &n, const ExprPtr &, const Binding &) { return n.value; }
  Value value_of(const TextLit &t, const ExprPtr &, const Binding &) { return t.value; }
  Value value_of(const NALit &, const ExprPtr &, const Binding &) { return NA{}; }

  Value value_of(const VarRef &ref, const ExprPtr &self, const Binding &b) {
    const std::string &table = ref.table ? *ref.table : b.table;
    if (!b.unit || !b.index) {
      note(DiagnosticKind::UnresolvedReference, format_expr(self) + " has no unit in scope");
      return NA{};
    }
    auto time = time_in(*b.index, table, b.time);
    if (ref.lag > 0) {
      const auto pos = b.index->time_position(table, time);
      if (!pos || !time || *pos < ref.lag) {
        note(DiagnosticKind::UnresolvedReference,
             format_expr(self) + " points before the first occasion");
        return NA{};
      }
      time = b.index->table(table)->times[*pos - ref.lag];
    }
    const Key key{table, time, *b.unit, ref.variable};
    const auto &points = b.index->dataset().points();
    auto it = points.find(key);
    if (it == points.end()) {
      note(DiagnosticKind::UnresolvedReference, "no value for " + to_string(key));
      return NA{};
    }
    return it->second;
  }

  Value value_of(const Aggregate &agg, const ExprPtr &self, const Binding &b) {
    std::string table = b.table;
    walk(agg.argument, [&](const Expr &e, bool) {
      if (auto ref = e.as<VarRef>(); ref && ref->table)
        table = *ref->table;
    });

    std::vector<Value> members;
    if (b.index) {
      if (const auto *t = b.index->table(table)) {
        auto it = t->units_at.find(time_in(*b.index, table, b.time));
        if (it != t->units_at.end()) {
          for (const auto &unit : it->second) {
            Binding inner{b.index, table, unit, it->first};
            members.push_back(value(agg.argument, inner));
          }
        }
      }
    }

    std::vector<Value> present;
    for (auto &m : members) {
      if (m.is_na()) {
        if (options_.na_policy == NaPolicy::Propagate)
          return NA{};
        continue;
      }
      present.push_back(std::move(m));
    }
    if (present.empty())
      return NA{};
    if (agg.fn == AggregateFn::Count)
      return Rational(present.size());

    for (const auto &m : present)
      if (!m.is_number()) {
        note(DiagnosticKind::TypeMismatch, format_expr(self) + " over non-numeric values");
        return NA{};
      }

    Rational acc = present.front().number();
    for (std::size_t i = 1; i < present.size(); ++i) {
      const Rational &x = present[i].number();
      switch (agg.fn) {
      case AggregateFn::Min:
        acc = std::min(acc, x);
        break;
      case AggregateFn::Max:
        acc = std::max(acc, x);
        break;
      default:
        acc += x;
      }
    }
    if (agg.fn == AggregateFn::Mean)
      acc /= Rational(present.size());
    return acc;
  }

  Value value_of(const Unary &u, const ExprPtr &self, const Binding &b) {
    Value v = value(u.operand, b);
    if (v.is_na())
      return v;
    if (!v.is_number()) {
      note(DiagnosticKind::TypeMismatch, format_expr(self) + " on text");
      return NA{};
    }
    if (u.op == UnaryOp::Neg)
      return Rational(-v.number());
    return Rational(abs(v.number()));
  }

  Value value_of(const Binary &bin, const ExprPtr &self, const Binding &b) {
    Value lhs = value(bin.lhs, b);
    Value rhs = value(bin.rhs, b);
    if (lhs.is_na() || rhs.is_na())
      return NA{};
    if (!lhs.is_number() || !rhs.is_number()) {
      note(DiagnosticKind::TypeMismatch, format_expr(self) + " on text");
      return NA{};
    }
    const Rational &x = lhs.number();
    const Rational &y = rhs.number();
    switch (bin.op) {
    case BinaryOp::Add:
      return Rational(x + y);
    case BinaryOp::Sub:
      return Rational(x - y);
    case BinaryOp::Mul:
      return Rational(x * y);
    case BinaryOp::Div:
      if (y == 0) {
        note(DiagnosticKind::DivisionByZero, format_expr(self));
        return NA{};
      }
      return Rational(x / y);
    default:
      return NA{};
    }
  }

  // Logical nodes are not values; typed ASTs never reach these.
  Value value_of(const If &, const ExprPtr &, const Binding &) { return NA{}; }
  Value value_of(const Builtin &, const ExprPtr &, const Binding &) { return NA{}; }

  TriBool compare(BinaryOp op, const Value &lhs, const Value &rhs, const ExprPtr &self) {
    if (lhs.is_na() || rhs.is_na())
      return TriBool::NA;
    if (lhs.is_number() != rhs.is_number()) {
      note(DiagnosticKind::TypeMismatch, format_expr(self) + " compares text with a number");
      return TriBool::NA;
    }
    if (lhs.is_text()) {
      if (op == BinaryOp::Eq)
        return to_tribool(lhs.text() == rhs.text());
      if (op == BinaryOp::Ne)
        return to_tribool(lhs.text() != rhs.text());
      note(DiagnosticKind::TypeMismatch, format_expr(self) + " orders text");
      return TriBool::NA;
    }
    const Rational &x = lhs.number();
    const Rational &y = rhs.number();
    switch (op) {
    case BinaryOp::Lt:
      return to_tribool(x < y);
    case BinaryOp::Le:
      return to_tribool(x <= y);
    case BinaryOp::Eq:
      return to_tribool(x == y);
    case BinaryOp::Ne:
      return to_tribool(x != y);
    case BinaryOp::Ge:
      return to_tribool(x >= y);
    case BinaryOp::Gt:
      return to_tribool(x > y);
    default:
      return TriBool::NA;
    }
  }

  TriBool builtin(const Builtin &call, const Binding &b) {
    const Value v = value(call.args.front(), b);
    if (call.fn == BuiltinFn::IsNA)
      return to_tribool(v.is_na());
    // The type of a missing value is unknown.
    if (v.is_na())
      return TriBool::NA;
    switch (call.fn) {
    case BuiltinFn::IsNumber:
      return to_tribool(v.is_number());
    case BuiltinFn::IsInteger:
      return to_tribool(v.is_number() && is_integral(v.number()));
    case BuiltinFn::IsText:
      return to_tribool(v.is_text());
    case BuiltinFn::InSet:
      for (std::size_t i = 1; i < call.args.size(); ++i)
        if (value(call.args[i], b) == v)
          return TriBool::True;
      return TriBool::False;
    default:
      return TriBool::NA;
    }
  }

  const EvalOptions &options_;
  std::vector<Diagnostic> *diagnostics_;
};

bool is_logical_node(const Expr &e) {
  if (auto b = e.as<Binary>())
    return !is_arithmetic(b->op);
  if (auto u = e.as<Unary>())
    return u->op == UnaryOp::Not;
  return e.is<If>() || e.is<Builtin>();
}

/// Rewrites a rule so that every reference names its table, checking each
/// against the schema.
class Resolver {
public:
  Resolver(const Rule &rule, const Schema &schema) : rule_(rule), schema_(schema) {}

  ExprPtr run() {
    std::set<std::string> record_qualifiers;
    std::vector<std::string> record_unqualified;
    walk(rule_.body, [&](const Expr &e, bool in_aggregate) {
      auto ref = e.as<VarRef>();
      if (!ref)
        return;
      if (ref->table)
        all_qualifiers_.insert(*ref->table);
      if (in_aggregate)
        return;
      if (ref->table)
        record_qualifiers.insert(*ref->table);
      else
        record_unqualified.push_back(ref->variable);
    });

    if (record_qualifiers.size() > 1)
      throw IncompatibleScope(rule_.name, "record-level references span several tables");
    if (!record_qualifiers.empty()) {
      home_ = *record_qualifiers.begin();
    } else if (!record_unqualified.empty()) {
      std::optional<std::set<std::string>> candidates;
      for (const auto &v : record_unqualified) {
        const auto tables = schema_.tables_with(v);
        if (tables.empty())
          throw UnknownVariable(rule_.name, v);
        std::set<std::string> these(tables.begin(), tables.end());
        if (!candidates) {
          candidates = std::move(these);
        } else {
          std::set<std::string> both;
          std::set_intersection(candidates->begin(), candidates->end(), these.begin(),
                                these.end(), std::inserter(both, both.end()));
          candidates = std::move(both);
        }
      }
      home_ = pick(*candidates, record_unqualified.front());
    }
    return resolve(rule_.body, false);
  }

  const std::optional<std::string> &home() const noexcept { return home_; }

private:
  std::string pick(const std::set<std::string> &candidates, const std::string &variable) const {
    if (candidates.size() == 1)
      return *candidates.begin();
    std::vector<std::string> preferred;
    for (const auto &t : candidates)
      if (all_qualifiers_.contains(t))
        preferred.push_back(t);
    if (preferred.size() == 1)
      return preferred.front();
    if (candidates.empty())
      throw IncompatibleScope(rule_.name, "no single table declares all referenced variables");
    throw UnknownVariable(rule_.name, variable + " (ambiguous: declared in several tables)");
  }

  std::string table_for(const VarRef &ref, bool in_aggregate) const {
    if (ref.table) {
      if (!schema_.find(*ref.table, ref.variable))
        throw UnknownVariable(rule_.name, *ref.table + "." + ref.variable);
      return *ref.table;
    }
    if (home_ && schema_.find(*home_, ref.variable))
      return *home_;
    if (!in_aggregate)
      throw UnknownVariable(rule_.name, ref.variable);
    const auto tables = schema_.tables_with(ref.variable);
    if (tables.empty())
      throw UnknownVariable(rule_.name, ref.variable);
    return pick(std::set<std::string>(tables.begin(), tables.end()), ref.variable);
  }

  ExprPtr resolve(const ExprPtr &expr, bool in_aggregate) const {
    return std::visit(
        [&](const auto &node) -> ExprPtr {
          using T = std::decay_t<decltype(node)>;
          if constexpr (std::is_same_v<T, VarRef>) {
            return make_var(node.variable, node.lag, table_for(node, in_aggregate));
          } else if constexpr (std::is_same_v<T, Aggregate>) {
            auto arg = resolve(node.argument, true);
            std::set<std::string> tables;
            walk(arg, [&](const Expr &e, bool) {
              if (auto ref = e.as<VarRef>())
                tables.insert(*ref->table);
            });
            if (tables.size() > 1)
              throw IncompatibleScope(rule_.name, "an aggregate spans several tables");
            return make_aggregate(node.fn, std::move(arg));
          } else if constexpr (std::is_same_v<T, Unary>) {
            return make_unary(node.op, resolve(node.operand, in_aggregate));
          } else if constexpr (std::is_same_v<T, Binary>) {
            return make_binary(node.op, resolve(node.lhs, in_aggregate),
                               resolve(node.rhs, in_aggregate));
          } else if constexpr (std::is_same_v<T, If>) {
            return make_if(resolve(node.condition, in_aggregate),
                           resolve(node.consequent, in_aggregate));
          } else if constexpr (std::is_same_v<T, Builtin>) {
            std::vector<ExprPtr> args;
            for (const auto &a : node.args)
              args.push_back(resolve(a, in_aggregate));
            return make_builtin(node.fn, std::move(args));
          } else {
            return expr;
          }
        },
        expr->node);
  }

  const Rule &rule_;
  const Schema &schema_;
  std::set<std::string> all_qualifiers_;
  std::optional<std::string> home_;
};

} // namespace

EvalResult eval_expr(const ExprPtr &expr, const Binding &binding, const EvalOptions &options,
                     std::vector<Diagnostic> *diagnostics) {
  Evaluator ev(options, diagnostics);
  if (is_logical_node(*expr) || expr->is<NALit>()) {
    if (expr->is<NALit>())
      return Value(NA{});
    return ev.logic(expr, binding);
  }
  return ev.value(expr, binding);
}

ValidationReport evaluate_ruleset(const RuleSet &rules, const Dataset &dataset,
                                  const Schema &schema, const EvalOptions &options) {
  const DataIndex index(dataset);
  ValidationReport report;

  for (const auto &rule : rules) {
    Resolver resolver(rule, schema);
    const ExprPtr body = resolver.run();

    std::vector<Binding> bindings;
    std::vector<Scope> scopes;
    if (const auto &home = resolver.home()) {
      std::vector<std::pair<std::string, std::optional<std::string>>> records;
      if (const auto *t = index.table(*home))
        for (const auto &[time, units] : t->units_at)
          for (const auto &unit : units)
            records.emplace_back(unit, time);
      std::sort(records.begin(), records.end(), [](const auto &a, const auto &b) {
        if (a.first != b.first)
          return id_less(a.first, b.first);
        return time_less(a.second, b.second);
      });
      for (const auto &[unit, time] : records) {
        bindings.push_back({&index, *home, unit, time});
        scopes.push_back({*home, unit, time});
      }
    } else {
      std::set<std::string> tables;
      walk(body, [&](const Expr &e, bool) {
        if (auto ref = e.as<VarRef>())
          tables.insert(*ref->table);
      });
      std::string label;
      for (const auto &t : tables)
        label += (label.empty() ? "" : ",") + t;
      if (label.empty())
        label = kDefaultTable;
      const std::string first = tables.empty() ? std::string(kDefaultTable) : *tables.begin();

      std::vector<std::string> times;
      for (const auto &t : tables)
        if (const auto *ti = index.table(t))
          for (const auto &time : ti->times)
            if (time && std::find(times.begin(), times.end(), *time) == times.end())
              times.push_back(*time);
      std::sort(times.begin(), times.end(), id_less);
      if (times.empty()) {
        bindings.push_back({&index, first, std::nullopt, std::nullopt});
        scopes.push_back({label, std::nullopt, std::nullopt});
      }
      for (const auto &time : times) {
        bindings.push_back({&index, first, std::nullopt, time});
        scopes.push_back({label, std::nullopt, time});
      }
    }

    RuleSummary summary{rule.name};
    for (std::size_t i = 0; i < bindings.size(); ++i) {
      std::vector<Diagnostic> local;
      Evaluator ev(options, &local);
      const TriBool result = ev.logic(body, bindings[i]);
      for (auto &d : local) {
        d.rule = rule.name;
        d.scope = scopes[i];
        report.diagnostics.push_back(std::move(d));
      }
      report.entries.push_back({rule.name, scopes[i], result});
      switch (result) {
      case TriBool::True:
        ++summary.true_count;
        break;
      case TriBool::False:
        ++summary.false_count;
        break;
      case TriBool::NA:
        ++summary.na_count;
        break;
      }
    }
    report.summary.push_back(std::move(summary));
  }
  return report;
}

} // namespace validus
