#include "validus/solver.hpp"

#include <algorithm>
#include <functional>

namespace validus {

bool check_atom(const Atom &atom, const Assignment &assignment) {
  if (const auto *cat = std::get_if<CategoricalAtom>(&atom)) {
    const auto it = assignment.categorical.find(cat->variable);
    return it != assignment.categorical.end() &&
           std::ranges::find(cat->allowed, it->second) != cat->allowed.end();
  }
  const auto &lin = std::get<LinearAtom>(atom);
  Rational sum = 0;
  for (const auto &[name, c] : lin.coefficients) {
    const auto it = assignment.numeric.find(name);
    if (it != assignment.numeric.end())
      sum += c * it->second;
  }
  switch (lin.relation) {
  case Relation::Lt: return sum < lin.constant;
  case Relation::Le: return sum <= lin.constant;
  case Relation::Eq: return sum == lin.constant;
  case Relation::Ge: return sum >= lin.constant;
  case Relation::Gt: return sum > lin.constant;
  case Relation::Ne: return sum != lin.constant;
  }
  return false;
}

bool check_assignment(const ConstraintSystem &system, const Assignment &assignment) {
  return std::ranges::all_of(system.clauses, [&](const Clause &clause) {
    return std::ranges::any_of(clause.disjuncts,
                               [&](const Atom &atom) { return check_atom(atom, assignment); });
  });
}

namespace {

struct Literal {
  bool categorical = false;
  std::size_t var = 0;           // categorical variable index
  std::vector<bool> mask;        // allowed levels
  LinearAtom atom;               // linear literals
  std::vector<Inequality> rows;  // the atom over the numeric index space
};

struct State {
  std::vector<Inequality> rows;
  std::vector<const LinearAtom *> asserted;
  std::vector<std::vector<bool>> domains;
};

enum class Status { False, True, Open };

class Search {
public:
  explicit Search(const ConstraintSystem &system) {
    for (const auto &[name, bounds] : system.numeric_vars)
      numeric_index(name);
    for (const auto &[name, levels] : system.categorical_vars) {
      categorical_index_.emplace(name, categorical_names_.size());
      categorical_names_.push_back(name);
      levels_.push_back(levels);
    }
    for (const auto &clause : system.clauses) {
      std::vector<Literal> lits;
      for (const auto &atom : clause.disjuncts)
        add_literals(atom, lits);
      clauses_.push_back(std::move(lits));
    }
  }

  std::size_t dimension() const { return numeric_names_.size(); }

  std::optional<std::size_t> numeric_of(const std::string &name) const {
    const auto it = numeric_index_.find(name);
    if (it == numeric_index_.end())
      return std::nullopt;
    return it->second;
  }

  State initial() const {
    State s;
    for (const auto &levels : levels_)
      s.domains.emplace_back(levels.size(), true);
    return s;
  }

  /// Visits conjunctions of literals that satisfy every clause and together
  /// cover all solutions. Stops early when `leaf` returns true.
  bool run(const State &state, const std::function<bool(const State &)> &leaf) const {
    std::vector<std::size_t> best;
    const std::vector<Literal> *chosen = nullptr;
    for (const auto &clause : clauses_) {
      std::vector<std::size_t> open;
      bool satisfied = false;
      for (std::size_t i = 0; i < clause.size() && !satisfied; ++i) {
        switch (status(clause[i], state)) {
        case Status::True: satisfied = true; break;
        case Status::Open: open.push_back(i); break;
        case Status::False: break;
        }
      }
      if (satisfied)
        continue;
      if (open.empty())
        return false;
      if (!chosen || open.size() < best.size()) {
        best = open;
        chosen = &clause;
      }
    }
    if (!chosen)
      return leaf(state);
    for (const std::size_t i : best) {
      State next = state;
      const Literal &lit = (*chosen)[i];
      if (lit.categorical) {
        for (std::size_t l = 0; l < lit.mask.size(); ++l)
          next.domains[lit.var][l] = next.domains[lit.var][l] && lit.mask[l];
      } else {
        next.rows.insert(next.rows.end(), lit.rows.begin(), lit.rows.end());
        next.asserted.push_back(&lit.atom);
      }
      if (run(next, leaf))
        return true;
    }
    return false;
  }

  Assignment witness(const State &state) const {
    Assignment out;
    const auto point = find_point(state.rows, dimension());
    for (std::size_t i = 0; i < numeric_names_.size(); ++i)
      out.numeric[numeric_names_[i]] = point ? (*point)[i] : Rational(0);
    for (std::size_t v = 0; v < categorical_names_.size(); ++v) {
      const auto &domain = state.domains[v];
      const auto pos = std::ranges::find(domain, true) - domain.begin();
      if (static_cast<std::size_t>(pos) < domain.size())
        out.categorical[categorical_names_[v]] = levels_[v][pos];
    }
    return out;
  }

private:
  std::size_t numeric_index(const std::string &name) {
    auto [it, inserted] = numeric_index_.emplace(name, numeric_names_.size());
    if (inserted)
      numeric_names_.push_back(name);
    return it->second;
  }

  void add_literals(const Atom &atom, std::vector<Literal> &out) {
    if (const auto *cat = std::get_if<CategoricalAtom>(&atom)) {
      auto it = categorical_index_.find(cat->variable);
      if (it == categorical_index_.end()) {
        // Undeclared: the allowed set is the whole universe we know about.
        it = categorical_index_.emplace(cat->variable, categorical_names_.size()).first;
        categorical_names_.push_back(cat->variable);
        levels_.push_back(cat->allowed);
      }
      Literal lit;
      lit.categorical = true;
      lit.var = it->second;
      for (const auto &level : levels_[lit.var])
        lit.mask.push_back(std::ranges::find(cat->allowed, level) != cat->allowed.end());
      out.push_back(std::move(lit));
      return;
    }
    const auto &lin = std::get<LinearAtom>(atom);
    if (lin.relation == Relation::Ne) {
      for (Relation r : {Relation::Lt, Relation::Gt}) {
        auto split = lin;
        split.relation = r;
        add_literals(split, out);
      }
      return;
    }
    for (const auto &[name, c] : lin.coefficients)
      numeric_index(name);
    Literal lit;
    lit.atom = lin;
    // sum(c x) - k >= 0 for lower-type relations, k - sum(c x) >= 0 for upper.
    auto row = [&](bool upper, bool strict) {
      Inequality ineq;
      ineq.strict = strict;
      ineq.constant = upper ? lin.constant : Rational(-lin.constant);
      for (const auto &[name, c] : lin.coefficients) {
        const auto idx = numeric_index_.at(name);
        if (ineq.coeffs.size() <= idx)
          ineq.coeffs.resize(idx + 1);
        ineq.coeffs[idx] = upper ? Rational(-c) : c;
      }
      lit.rows.push_back(std::move(ineq));
    };
    switch (lin.relation) {
    case Relation::Lt: row(true, true); break;
    case Relation::Le: row(true, false); break;
    case Relation::Gt: row(false, true); break;
    case Relation::Ge: row(false, false); break;
    case Relation::Eq: row(true, false); row(false, false); break;
    case Relation::Ne: break;
    }
    out.push_back(std::move(lit));
  }

  Status status(const Literal &lit, const State &state) const {
    if (lit.categorical) {
      const auto &domain = state.domains[lit.var];
      bool any = false, all = true;
      for (std::size_t l = 0; l < domain.size(); ++l) {
        if (!domain[l])
          continue;
        if (lit.mask[l])
          any = true;
        else
          all = false;
      }
      if (!any)
        return Status::False;
      return all ? Status::True : Status::Open;
    }
    for (const auto *atom : state.asserted)
      if (*atom == lit.atom)
        return Status::True;
    std::vector<Inequality> rows = state.rows;
    rows.insert(rows.end(), lit.rows.begin(), lit.rows.end());
    return is_feasible(rows, dimension()) ? Status::Open : Status::False;
  }

  std::vector<std::string> numeric_names_;
  std::map<std::string, std::size_t> numeric_index_;
  std::vector<std::string> categorical_names_;
  std::map<std::string, std::size_t> categorical_index_;
  std::vector<std::vector<std::string>> levels_;
  std::vector<std::vector<Literal>> clauses_;
};

} // namespace

SatResult is_satisfiable(const ConstraintSystem &system, bool want_witness) {
  const Search search(system);
  SatResult out;
  search.run(search.initial(), [&](const State &leaf) {
    out.satisfiable = true;
    if (want_witness)
      out.witness = search.witness(leaf);
    return true;
  });
  return out;
}

Interval implied_bounds(const ConstraintSystem &system, const std::string &variable) {
  const Search search(system);
  const auto index = search.numeric_of(variable);
  Interval out = Interval::nothing();
  search.run(search.initial(), [&](const State &leaf) {
    if (!index) {
      out = Interval::everything();
      return true;
    }
    out = out.hull(project(leaf.rows, search.dimension(), *index));
    return out == Interval::everything();
  });
  return out;
}

} // namespace validus
