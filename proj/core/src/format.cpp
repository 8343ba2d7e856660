#include "validus/format.hpp"

namespace validus {

namespace {

// Binding strength of each grammar level; higher binds tighter.
enum Level : int {
  kIf = 0,
  kOr = 1,
  kAnd = 2,
  kNot = 3,
  kCmp = 4,
  kSum = 5,
  kTerm = 6,
  kPrefix = 7,
  kAtom = 8,
};

int level_of(const Expr &e) {
  if (e.is<If>())
    return kIf;
  if (auto b = e.as<Binary>()) {
    switch (b->op) {
    case BinaryOp::Or:
      return kOr;
    case BinaryOp::And:
      return kAnd;
    case BinaryOp::Add:
    case BinaryOp::Sub:
      return kSum;
    case BinaryOp::Mul:
    case BinaryOp::Div:
      return kTerm;
    default:
      return kCmp;
    }
  }
  if (auto u = e.as<Unary>()) {
    if (u->op == UnaryOp::Not)
      return kNot;
    if (u->op == UnaryOp::Neg)
      return kPrefix;
  }
  return kAtom;
}

std::string quote(const std::string &text) {
  std::string out = "\"";
  for (char c : text) {
    if (c == '"' || c == '\\')
      out += '\\';
    if (c == '\n') {
      out += "\\n";
      continue;
    }
    if (c == '\t') {
      out += "\\t";
      continue;
    }
    out += c;
  }
  return out + "\"";
}

std::string number_text(const Rational &value) {
  if (has_finite_decimal(value))
    return to_string(value);
  return "(" + numerator(value).str() + " / " + denominator(value).str() + ")";
}

std::string print(const ExprPtr &expr, int min_level);

struct Printer {
  std::string operator()(const NumberLit &n) const { return number_text(n.value); }
  std::string operator()(const TextLit &t) const { return quote(t.value); }
  std::string operator()(const NALit &) const { return "NA"; }

  std::string operator()(const VarRef &v) const {
    std::string out = v.table ? *v.table + "." + v.variable : v.variable;
    if (v.lag > 0)
      out += "@" + std::to_string(v.lag);
    return out;
  }

  std::string operator()(const Aggregate &a) const {
    return std::string(to_string(a.fn)) + "(" + print(a.argument, kIf) + ")";
  }

  std::string operator()(const Unary &u) const {
    switch (u.op) {
    case UnaryOp::Not:
      return "not " + print(u.operand, kNot);
    case UnaryOp::Abs:
      return "abs(" + print(u.operand, kIf) + ")";
    case UnaryOp::Neg:
      // `-3` would read back as a negative literal, so keep the node visible.
      if (u.operand->is<NumberLit>())
        return "-(" + print(u.operand, kIf) + ")";
      return "-" + print(u.operand, kPrefix);
    }
    return "";
  }

  std::string operator()(const Binary &b) const {
    const std::string op(to_string(b.op));
    switch (b.op) {
    case BinaryOp::Or:
      return print(b.lhs, kOr) + " or " + print(b.rhs, kAnd);
    case BinaryOp::And:
      return print(b.lhs, kAnd) + " and " + print(b.rhs, kNot);
    case BinaryOp::Add:
    case BinaryOp::Sub:
      return print(b.lhs, kSum) + " " + op + " " + print(b.rhs, kTerm);
    case BinaryOp::Mul:
    case BinaryOp::Div:
      return print(b.lhs, kTerm) + " " + op + " " + print(b.rhs, kPrefix);
    default:
      return print(b.lhs, kSum) + " " + op + " " + print(b.rhs, kSum);
    }
  }

  std::string operator()(const If &i) const {
    return "if (" + print(i.condition, kIf) + ") " + print(i.consequent, kIf);
  }

  std::string operator()(const Builtin &b) const {
    std::string out = std::string(to_string(b.fn)) + "(" + print(b.args.front(), kIf);
    if (b.fn == BuiltinFn::InSet) {
      out += ", {";
      for (std::size_t i = 1; i < b.args.size(); ++i) {
        if (i > 1)
          out += ", ";
        out += print(b.args[i], kIf);
      }
      out += "}";
    } else {
      for (std::size_t i = 1; i < b.args.size(); ++i)
        out += ", " + print(b.args[i], kIf);
    }
    return out + ")";
  }
};

std::string print(const ExprPtr &expr, int min_level) {
  auto text = std::visit(Printer{}, expr->node);
  if (level_of(*expr) < min_level)
    return "(" + text + ")";
  return text;
}

} // namespace

std::string format_expr(const ExprPtr &expr) { return print(expr, kIf); }

std::string format_rule(const Rule &rule) { return rule.name + ": " + format_expr(rule.body); }

std::string format_ruleset(const RuleSet &rules) {
  std::string out;
  for (const auto &rule : rules) {
    out += format_rule(rule);
    out += '\n';
  }
  return out;
}

} // namespace validus
