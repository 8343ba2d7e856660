#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "validus/rational.hpp"

namespace validus {

struct Expr;

/// Expression nodes are immutable and shared; subtrees may appear in several
/// rules (negation and simplification reuse them).
using ExprPtr = std::shared_ptr<const Expr>;

enum class AggregateFn { Mean, Sum, Min, Max, Count };
enum class UnaryOp { Neg, Not, Abs };
enum class BinaryOp { Add, Sub, Mul, Div, Lt, Le, Eq, Ne, Ge, Gt, And, Or };
enum class BuiltinFn { IsNumber, IsInteger, IsText, IsNA, InSet };

std::string_view to_string(AggregateFn fn) noexcept;
std::string_view to_string(BinaryOp op) noexcept;
std::string_view to_string(BuiltinFn fn) noexcept;

bool is_comparison(BinaryOp op) noexcept;
bool is_arithmetic(BinaryOp op) noexcept;
bool is_logical(BinaryOp op) noexcept;

/// Comparison with the opposite truth value: `<` for `>=`, `!=` for `==`.
BinaryOp complement(BinaryOp comparison) noexcept;

struct NumberLit {
  Rational value;
};

struct TextLit {
  std::string value;
};

struct NALit {};

/// Reference to a variable of the current unit. `lag` counts occasions back
/// from the current one; `table` is empty when the reference is unqualified.
struct VarRef {
  std::optional<std::string> table;
  std::string variable;
  unsigned lag = 0;
};

/// Aggregate of `argument` over all units of a table at one occasion.
struct Aggregate {
  AggregateFn fn;
  ExprPtr argument;
};

struct Unary {
  UnaryOp op;
  ExprPtr operand;
};

struct Binary {
  BinaryOp op;
  ExprPtr lhs;
  ExprPtr rhs;
};

/// Logical implication `if (condition) consequent`.
struct If {
  ExprPtr condition;
  ExprPtr consequent;
};

/// Type predicates and set membership. For `in_set` the first argument is
/// the tested expression and the rest are literal members.
struct Builtin {
  BuiltinFn fn;
  std::vector<ExprPtr> args;
};

struct Expr {
  std::variant<NumberLit, TextLit, NALit, VarRef, Aggregate, Unary, Binary, If, Builtin> node;

  template <class T> const T *as() const noexcept { return std::get_if<T>(&node); }
  template <class T> bool is() const noexcept { return std::holds_alternative<T>(node); }
};

/// Deep structural equality.
bool operator==(const Expr &a, const Expr &b);
bool equal(const ExprPtr &a, const ExprPtr &b);

/// Pre-order traversal. The flag tells whether the node sits inside an
/// aggregate argument.
void walk(const ExprPtr &expr, const std::function<void(const Expr &, bool)> &visit,
          bool in_aggregate = false);

ExprPtr make_number(Rational value);
ExprPtr make_text(std::string value);
ExprPtr make_na();
ExprPtr make_var(std::string variable, unsigned lag = 0,
                 std::optional<std::string> table = std::nullopt);
ExprPtr make_aggregate(AggregateFn fn, ExprPtr argument);
ExprPtr make_unary(UnaryOp op, ExprPtr operand);
ExprPtr make_binary(BinaryOp op, ExprPtr lhs, ExprPtr rhs);
ExprPtr make_if(ExprPtr condition, ExprPtr consequent);
ExprPtr make_builtin(BuiltinFn fn, std::vector<ExprPtr> args);

} // namespace validus
