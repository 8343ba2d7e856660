#pragma once

#include <cstdint>
#include <initializer_list>
#include <string_view>

namespace validus {

/// Outcome of a validation rule: the Boolean verdicts plus NA for rules that
/// could not be decided because inputs were missing or ill-typed.
enum class TriBool : std::uint8_t { False = 0, True = 1, NA = 2 };

constexpr TriBool to_tribool(bool b) noexcept {
  return b ? TriBool::True : TriBool::False;
}

constexpr std::string_view to_string(TriBool v) noexcept {
  switch (v) {
  case TriBool::False:
    return "FALSE";
  case TriBool::True:
    return "TRUE";
  case TriBool::NA:
    return "NA";
  }
  return "NA";
}

// Strong Kleene connectives.

constexpr TriBool kleene_not(TriBool a) noexcept {
  switch (a) {
  case TriBool::False:
    return TriBool::True;
  case TriBool::True:
    return TriBool::False;
  case TriBool::NA:
    return TriBool::NA;
  }
  return TriBool::NA;
}

constexpr TriBool kleene_and(TriBool a, TriBool b) noexcept {
  if (a == TriBool::False || b == TriBool::False)
    return TriBool::False;
  if (a == TriBool::NA || b == TriBool::NA)
    return TriBool::NA;
  return TriBool::True;
}

constexpr TriBool kleene_or(TriBool a, TriBool b) noexcept {
  if (a == TriBool::True || b == TriBool::True)
    return TriBool::True;
  if (a == TriBool::NA || b == TriBool::NA)
    return TriBool::NA;
  return TriBool::False;
}

constexpr TriBool kleene_implies(TriBool condition, TriBool consequent) noexcept {
  return kleene_or(kleene_not(condition), consequent);
}

enum class LogicalOp : std::uint8_t { Not, And, Or, If };

/// N-ary form of the connectives. `Not` takes one argument, `If` two; `And`
/// and `Or` fold over any number (empty And is True, empty Or is False).
/// Arity mismatches yield NA.
constexpr TriBool kleene_apply(LogicalOp op, std::initializer_list<TriBool> args) noexcept {
  switch (op) {
  case LogicalOp::Not:
    return args.size() == 1 ? kleene_not(*args.begin()) : TriBool::NA;
  case LogicalOp::If:
    return args.size() == 2 ? kleene_implies(*args.begin(), *(args.begin() + 1))
                            : TriBool::NA;
  case LogicalOp::And: {
    TriBool acc = TriBool::True;
    for (TriBool a : args)
      acc = kleene_and(acc, a);
    return acc;
  }
  case LogicalOp::Or: {
    TriBool acc = TriBool::False;
    for (TriBool a : args)
      acc = kleene_or(acc, a);
    return acc;
  }
  }
  return TriBool::NA;
}

} // namespace validus
