#include "validus/linear.hpp"

#include <map>
#include <stdexcept>

namespace validus {

// Interval ------------------------------------------------------------------

bool Interval::contains(const Rational &v) const {
  if (empty)
    return false;
  if (low && (low->open ? v <= low->value : v < low->value))
    return false;
  if (high && (high->open ? v >= high->value : v > high->value))
    return false;
  return true;
}

bool Interval::is_point() const {
  return !empty && low && high && !low->open && !high->open && low->value == high->value;
}

namespace {

// Tighter lower bound of the two (higher value; open wins ties).
std::optional<Endpoint> tighter_low(const std::optional<Endpoint> &a,
                                    const std::optional<Endpoint> &b) {
  if (!a)
    return b;
  if (!b)
    return a;
  if (a->value != b->value)
    return a->value > b->value ? a : b;
  return Endpoint{a->value, a->open || b->open};
}

std::optional<Endpoint> tighter_high(const std::optional<Endpoint> &a,
                                     const std::optional<Endpoint> &b) {
  if (!a)
    return b;
  if (!b)
    return a;
  if (a->value != b->value)
    return a->value < b->value ? a : b;
  return Endpoint{a->value, a->open || b->open};
}

Interval normalized(Interval in) {
  if (in.empty) {
    in.low.reset();
    in.high.reset();
    return in;
  }
  if (in.low && in.high) {
    if (in.low->value > in.high->value ||
        (in.low->value == in.high->value && (in.low->open || in.high->open)))
      return Interval::nothing();
  }
  return in;
}

} // namespace

Interval Interval::intersect(const Interval &other) const {
  if (empty || other.empty)
    return nothing();
  return normalized({false, tighter_low(low, other.low), tighter_high(high, other.high)});
}

Interval Interval::hull(const Interval &other) const {
  if (empty)
    return other;
  if (other.empty)
    return *this;
  Interval out;
  if (low && other.low) {
    if (low->value != other.low->value)
      out.low = low->value < other.low->value ? low : other.low;
    else
      out.low = Endpoint{low->value, low->open && other.low->open};
  }
  if (high && other.high) {
    if (high->value != other.high->value)
      out.high = high->value > other.high->value ? high : other.high;
    else
      out.high = Endpoint{high->value, high->open && other.high->open};
  }
  return out;
}

bool Interval::within(const Interval &other) const { return intersect(other) == *this; }

std::string Interval::to_string() const {
  if (empty)
    return "{}";
  std::string out = low ? (low->open ? "(" : "[") + validus::to_string(low->value) : "(-inf";
  out += ", ";
  out += high ? validus::to_string(high->value) + (high->open ? ")" : "]") : "inf)";
  return out;
}

Rational pick_value(const Interval &interval) {
  if (interval.empty)
    throw std::invalid_argument("pick_value on an empty interval");
  if (interval.contains(0))
    return 0;
  if (interval.low && interval.low->value >= 0) {
    Rational candidate(interval.low->open ? Integer(floor(interval.low->value) + 1)
                                          : ceil(interval.low->value));
    if (interval.contains(candidate))
      return candidate;
  }
  if (interval.high && interval.high->value <= 0) {
    Rational candidate(interval.high->open ? Integer(ceil(interval.high->value) - 1)
                                           : floor(interval.high->value));
    if (interval.contains(candidate))
      return candidate;
  }
  if (interval.is_point())
    return interval.low->value;
  return (interval.low->value + interval.high->value) / 2;
}

// Elimination ---------------------------------------------------------------

namespace {

struct Reduced {
  bool feasible = true;
  std::vector<Inequality> rows;
};

/// Scales so the first nonzero coefficient is +-1, folds constant rows, and
/// keeps only the tightest row per direction.
Reduced reduce(std::vector<Inequality> rows) {
  std::map<std::vector<Rational>, std::pair<Rational, bool>> best;
  for (auto &row : rows) {
    std::size_t lead = 0;
    while (lead < row.coeffs.size() && row.coeffs[lead] == 0)
      ++lead;
    if (lead == row.coeffs.size()) {
      if (row.strict ? row.constant <= 0 : row.constant < 0)
        return {false, {}};
      continue;
    }
    const Rational scale = abs(row.coeffs[lead]);
    if (scale != 1) {
      for (auto &c : row.coeffs)
        c /= scale;
      row.constant /= scale;
    }
    auto [it, inserted] = best.try_emplace(row.coeffs, row.constant, row.strict);
    if (!inserted) {
      auto &[constant, strict] = it->second;
      if (row.constant < constant || (row.constant == constant && row.strict)) {
        constant = row.constant;
        strict = row.strict;
      }
    }
  }
  Reduced out;
  out.rows.reserve(best.size());
  for (auto &[coeffs, tail] : best)
    out.rows.push_back({coeffs, tail.first, tail.second});
  return out;
}

Reduced eliminate(const std::vector<Inequality> &rows, std::size_t var) {
  std::vector<const Inequality *> pos, neg;
  std::vector<Inequality> next;
  for (const auto &row : rows) {
    if (row.coeffs[var] > 0)
      pos.push_back(&row);
    else if (row.coeffs[var] < 0)
      neg.push_back(&row);
    else
      next.push_back(row);
  }
  for (const auto *p : pos) {
    for (const auto *n : neg) {
      const Rational wp = -n->coeffs[var];
      const Rational wn = p->coeffs[var];
      Inequality combined;
      combined.coeffs.resize(p->coeffs.size());
      for (std::size_t i = 0; i < combined.coeffs.size(); ++i)
        combined.coeffs[i] = wp * p->coeffs[i] + wn * n->coeffs[i];
      combined.coeffs[var] = 0;
      combined.constant = wp * p->constant + wn * n->constant;
      combined.strict = p->strict || n->strict;
      next.push_back(std::move(combined));
    }
  }
  return reduce(std::move(next));
}

/// Variable whose elimination creates the fewest new rows, or nullopt when
/// no variable occurs.
std::optional<std::size_t> choose(const std::vector<Inequality> &rows, std::size_t dimension,
                                  std::optional<std::size_t> keep = std::nullopt) {
  std::optional<std::size_t> pick;
  long best_cost = 0;
  for (std::size_t v = 0; v < dimension; ++v) {
    if (keep && v == *keep)
      continue;
    long p = 0, n = 0;
    for (const auto &row : rows) {
      if (row.coeffs[v] > 0)
        ++p;
      else if (row.coeffs[v] < 0)
        ++n;
    }
    if (p + n == 0)
      continue;
    const long cost = p * n - p - n;
    if (!pick || cost < best_cost) {
      pick = v;
      best_cost = cost;
    }
  }
  return pick;
}

std::vector<Inequality> padded(std::span<const Inequality> rows, std::size_t dimension) {
  std::vector<Inequality> out(rows.begin(), rows.end());
  for (auto &row : out)
    if (row.coeffs.size() != dimension)
      row.coeffs.resize(dimension);
  return out;
}

Interval bounds_of(const std::vector<Inequality> &rows, std::size_t var) {
  Interval out;
  for (const auto &row : rows) {
    const Rational &a = row.coeffs[var];
    if (a == 0)
      continue;
    const Rational threshold = -row.constant / a;
    Interval one;
    if (a > 0)
      one.low = Endpoint{threshold, row.strict};
    else
      one.high = Endpoint{threshold, row.strict};
    out = out.intersect(one);
  }
  return out;
}

} // namespace

bool is_feasible(std::span<const Inequality> rows, std::size_t dimension) {
  auto current = reduce(padded(rows, dimension));
  while (current.feasible) {
    const auto var = choose(current.rows, dimension);
    if (!var)
      return true;
    current = eliminate(current.rows, *var);
  }
  return false;
}

std::optional<std::vector<Rational>> find_point(std::span<const Inequality> rows,
                                                std::size_t dimension) {
  auto current = reduce(padded(rows, dimension));
  std::vector<std::vector<Inequality>> stages;
  std::vector<std::size_t> order;
  while (current.feasible) {
    const auto var = choose(current.rows, dimension);
    if (!var)
      break;
    stages.push_back(current.rows);
    order.push_back(*var);
    current = eliminate(current.rows, *var);
  }
  if (!current.feasible)
    return std::nullopt;

  std::vector<Rational> point(dimension, Rational(0));
  for (std::size_t k = order.size(); k-- > 0;) {
    const std::size_t var = order[k];
    // Substitute the coordinates fixed so far; only `var` stays free.
    std::vector<Inequality> local;
    for (const auto &row : stages[k]) {
      Inequality one{std::vector<Rational>(dimension, Rational(0)), row.constant, row.strict};
      one.coeffs[var] = row.coeffs[var];
      for (std::size_t j = k + 1; j < order.size(); ++j)
        one.constant += row.coeffs[order[j]] * point[order[j]];
      local.push_back(std::move(one));
    }
    const Interval range = bounds_of(local, var);
    if (range.empty)
      throw std::logic_error("back-substitution reached an empty range");
    point[var] = pick_value(range);
  }
  return point;
}

Interval project(std::span<const Inequality> rows, std::size_t dimension, std::size_t variable) {
  auto current = reduce(padded(rows, dimension));
  while (current.feasible) {
    const auto var = choose(current.rows, dimension, variable);
    if (!var)
      return bounds_of(current.rows, variable);
    current = eliminate(current.rows, *var);
  }
  return Interval::nothing();
}

} // namespace validus
