#include "validus/ast.hpp"

namespace validus {

std::string_view to_string(AggregateFn fn) noexcept {
  switch (fn) {
  case AggregateFn::Mean:
    return "mean";
  case AggregateFn::Sum:
    return "sum";
  case AggregateFn::Min:
    return "min";
  case AggregateFn::Max:
    return "max";
  case AggregateFn::Count:
    return "count";
  }
  return "?";
}

std::string_view to_string(BinaryOp op) noexcept {
  switch (op) {
  case BinaryOp::Add:
    return "+";
  case BinaryOp::Sub:
    return "-";
  case BinaryOp::Mul:
    return "*";
  case BinaryOp::Div:
    return "/";
  case BinaryOp::Lt:
    return "<";
  case BinaryOp::Le:
    return "<=";
  case BinaryOp::Eq:
    return "==";
  case BinaryOp::Ne:
    return "!=";
  case BinaryOp::Ge:
    return ">=";
  case BinaryOp::Gt:
    return ">";
  case BinaryOp::And:
    return "and";
  case BinaryOp::Or:
    return "or";
  }
  return "?";
}

std::string_view to_string(BuiltinFn fn) noexcept {
  switch (fn) {
  case BuiltinFn::IsNumber:
    return "is_number";
  case BuiltinFn::IsInteger:
    return "is_integer";
  case BuiltinFn::IsText:
    return "is_text";
  case BuiltinFn::IsNA:
    return "is_na";
  case BuiltinFn::InSet:
    return "in_set";
  }
  return "?";
}

bool is_comparison(BinaryOp op) noexcept {
  switch (op) {
  case BinaryOp::Lt:
  case BinaryOp::Le:
  case BinaryOp::Eq:
  case BinaryOp::Ne:
  case BinaryOp::Ge:
  case BinaryOp::Gt:
    return true;
  default:
    return false;
  }
}

bool is_arithmetic(BinaryOp op) noexcept {
  return op == BinaryOp::Add || op == BinaryOp::Sub || op == BinaryOp::Mul ||
         op == BinaryOp::Div;
}

bool is_logical(BinaryOp op) noexcept {
  return op == BinaryOp::And || op == BinaryOp::Or;
}

BinaryOp complement(BinaryOp comparison) noexcept {
  switch (comparison) {
  case BinaryOp::Lt:
    return BinaryOp::Ge;
  case BinaryOp::Le:
    return BinaryOp::Gt;
  case BinaryOp::Eq:
    return BinaryOp::Ne;
  case BinaryOp::Ne:
    return BinaryOp::Eq;
  case BinaryOp::Ge:
    return BinaryOp::Lt;
  case BinaryOp::Gt:
    return BinaryOp::Le;
  default:
    return comparison;
  }
}

bool equal(const ExprPtr &a, const ExprPtr &b) {
  if (a == b)
    return true;
  if (!a || !b)
    return false;
  return *a == *b;
}

namespace {

struct EqualVisitor {
  const Expr &other;

  bool operator()(const NumberLit &a) const {
    auto b = other.as<NumberLit>();
    return b && a.value == b->value;
  }
  bool operator()(const TextLit &a) const {
    auto b = other.as<TextLit>();
    return b && a.value == b->value;
  }
  bool operator()(const NALit &) const { return other.is<NALit>(); }
  bool operator()(const VarRef &a) const {
    auto b = other.as<VarRef>();
    return b && a.table == b->table && a.variable == b->variable && a.lag == b->lag;
  }
  bool operator()(const Aggregate &a) const {
    auto b = other.as<Aggregate>();
    return b && a.fn == b->fn && equal(a.argument, b->argument);
  }
  bool operator()(const Unary &a) const {
    auto b = other.as<Unary>();
    return b && a.op == b->op && equal(a.operand, b->operand);
  }
  bool operator()(const Binary &a) const {
    auto b = other.as<Binary>();
    return b && a.op == b->op && equal(a.lhs, b->lhs) && equal(a.rhs, b->rhs);
  }
  bool operator()(const If &a) const {
    auto b = other.as<If>();
    return b && equal(a.condition, b->condition) && equal(a.consequent, b->consequent);
  }
  bool operator()(const Builtin &a) const {
    auto b = other.as<Builtin>();
    if (!b || a.fn != b->fn || a.args.size() != b->args.size())
      return false;
    for (std::size_t i = 0; i < a.args.size(); ++i)
      if (!equal(a.args[i], b->args[i]))
        return false;
    return true;
  }
};

template <class Node> ExprPtr wrap(Node node) {
  return std::make_shared<const Expr>(Expr{std::move(node)});
}

} // namespace

bool operator==(const Expr &a, const Expr &b) {
  return std::visit(EqualVisitor{b}, a.node);
}

void walk(const ExprPtr &expr, const std::function<void(const Expr &, bool)> &visit,
          bool in_aggregate) {
  visit(*expr, in_aggregate);
  std::visit(
      [&](const auto &node) {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, Aggregate>) {
          walk(node.argument, visit, true);
        } else if constexpr (std::is_same_v<T, Unary>) {
          walk(node.operand, visit, in_aggregate);
        } else if constexpr (std::is_same_v<T, Binary>) {
          walk(node.lhs, visit, in_aggregate);
          walk(node.rhs, visit, in_aggregate);
        } else if constexpr (std::is_same_v<T, If>) {
          walk(node.condition, visit, in_aggregate);
          walk(node.consequent, visit, in_aggregate);
        } else if constexpr (std::is_same_v<T, Builtin>) {
          for (const auto &arg : node.args)
            walk(arg, visit, in_aggregate);
        }
      },
      expr->node);
}

ExprPtr make_number(Rational value) { return wrap(NumberLit{std::move(value)}); }
ExprPtr make_text(std::string value) { return wrap(TextLit{std::move(value)}); }
ExprPtr make_na() { return wrap(NALit{}); }

ExprPtr make_var(std::string variable, unsigned lag, std::optional<std::string> table) {
  return wrap(VarRef{std::move(table), std::move(variable), lag});
}

ExprPtr make_aggregate(AggregateFn fn, ExprPtr argument) {
  return wrap(Aggregate{fn, std::move(argument)});
}

ExprPtr make_unary(UnaryOp op, ExprPtr operand) { return wrap(Unary{op, std::move(operand)}); }

ExprPtr make_binary(BinaryOp op, ExprPtr lhs, ExprPtr rhs) {
  return wrap(Binary{op, std::move(lhs), std::move(rhs)});
}

ExprPtr make_if(ExprPtr condition, ExprPtr consequent) {
  return wrap(If{std::move(condition), std::move(consequent)});
}

ExprPtr make_builtin(BuiltinFn fn, std::vector<ExprPtr> args) {
  return wrap(Builtin{fn, std::move(args)});
}

} // namespace validus
