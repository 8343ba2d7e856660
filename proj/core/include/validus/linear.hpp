#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "validus/rational.hpp"

namespace validus {

struct Endpoint {
  Rational value;
  bool open = false;

  friend bool operator==(const Endpoint &, const Endpoint &) = default;
};

/// A convex subset of the rationals. A missing endpoint is unbounded.
struct Interval {
  bool empty = false;
  std::optional<Endpoint> low;
  std::optional<Endpoint> high;

  static Interval everything() { return {}; }
  static Interval nothing() { return {true, std::nullopt, std::nullopt}; }
  static Interval point(const Rational &v) { return {false, Endpoint{v, false}, Endpoint{v, false}}; }

  bool contains(const Rational &v) const;
  bool is_point() const;
  bool is_bounded() const { return low && high; }

  Interval intersect(const Interval &other) const;
  /// Smallest interval containing both.
  Interval hull(const Interval &other) const;
  /// Subset test.
  bool within(const Interval &other) const;

  std::string to_string() const;

  friend bool operator==(const Interval &, const Interval &) = default;
};

/// `coeffs . x + constant >= 0`, or `> 0` when strict.
struct Inequality {
  std::vector<Rational> coeffs;
  Rational constant;
  bool strict = false;

  friend bool operator==(const Inequality &, const Inequality &) = default;
};

/// Exact feasibility of a conjunction of linear inequalities over the
/// rationals by Fourier-Motzkin elimination. Strictness is tracked through
/// every combination, so `x > 0, x < 0` and `x >= 0, x <= 0` are told apart.
bool is_feasible(std::span<const Inequality> rows, std::size_t dimension);

/// A satisfying point, built by back-substitution through the elimination
/// stages. Prefers 0, then the integer closest to 0, then a midpoint.
std::optional<std::vector<Rational>> find_point(std::span<const Inequality> rows,
                                                std::size_t dimension);

/// Exact projection of the solution set onto one coordinate.
Interval project(std::span<const Inequality> rows, std::size_t dimension, std::size_t variable);

/// A value in a nonempty interval, chosen as in find_point.
Rational pick_value(const Interval &interval);

} // namespace validus
