#pragma once

#include <map>
#include <optional>
#include <string>

#include "validus/constraint.hpp"
#include "validus/linear.hpp"

namespace validus {

struct Assignment {
  std::map<std::string, Rational> numeric;
  std::map<std::string, std::string> categorical;

  friend bool operator==(const Assignment &, const Assignment &) = default;
};

struct SatResult {
  bool satisfiable = false;
  std::optional<Assignment> witness;
};

/// Decides the system over the rationals and the declared levels: case
/// split over clause disjuncts and categorical levels, Fourier-Motzkin at
/// every branch. Integer variables are treated as rational.
SatResult is_satisfiable(const ConstraintSystem &system, bool want_witness = false);

/// Truth of one atom under a complete assignment.
bool check_atom(const Atom &atom, const Assignment &assignment);

/// True when the assignment satisfies every clause.
bool check_assignment(const ConstraintSystem &system, const Assignment &assignment);

/// Tightest interval enclosing every value `variable` takes over the
/// solutions of the system; empty when the system is unsatisfiable.
Interval implied_bounds(const ConstraintSystem &system, const std::string &variable);

} // namespace validus
