#include "generators.hpp"

#include <algorithm>

namespace validus::testing {

int uniform(Rng &rng, int low, int high) {
  return std::uniform_int_distribution<int>(low, high)(rng);
}

namespace {

bool chance(Rng &rng, double p) { return std::bernoulli_distribution(p)(rng); }

template <class T> const T &pick(Rng &rng, const std::vector<T> &items) {
  return items[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(items.size()) - 1))];
}

const std::vector<std::string> kLevels{"a", "b", "c"};

} // namespace

ConstraintSystem random_system(Rng &rng, const SystemShape &shape) {
  ConstraintSystem system;
  const int numeric = uniform(rng, 1, shape.numeric);
  const int categorical = uniform(rng, 0, shape.categorical);
  std::vector<std::string> numeric_names, categorical_names;
  for (int i = 0; i < numeric; ++i) {
    numeric_names.push_back("x" + std::to_string(i));
    system.numeric_vars[numeric_names.back()] = std::nullopt;
  }
  for (int i = 0; i < categorical; ++i) {
    categorical_names.push_back("g" + std::to_string(i));
    const int levels = uniform(rng, 2, shape.levels);
    system.categorical_vars[categorical_names.back()] =
        std::vector<std::string>(kLevels.begin(), kLevels.begin() + levels);
  }

  const int clauses = uniform(rng, 1, shape.clauses);
  for (int c = 0; c < clauses; ++c) {
    Clause clause;
    clause.origin = "c" + std::to_string(c);
    const int disjuncts = uniform(rng, 1, shape.disjuncts);
    for (int d = 0; d < disjuncts; ++d) {
      if (!categorical_names.empty() && chance(rng, 0.3)) {
        const auto &name = pick(rng, categorical_names);
        CategoricalAtom atom{name, {}};
        for (const auto &level : system.categorical_vars.at(name))
          if (chance(rng, 0.5))
            atom.allowed.push_back(level);
        if (atom.allowed.empty())
          atom.allowed.push_back(pick(rng, system.categorical_vars.at(name)));
        clause.disjuncts.emplace_back(std::move(atom));
        continue;
      }
      LinearAtom atom;
      auto names = numeric_names;
      std::ranges::shuffle(names, rng);
      const int used =
          shape.single_variable ? 1 : uniform(rng, 1, std::min<int>(3, static_cast<int>(names.size())));
      for (int v = 0; v < used; ++v) {
        int coefficient = 0;
        while (coefficient == 0)
          coefficient = uniform(rng, -shape.coefficient, shape.coefficient);
        atom.coefficients[names[static_cast<std::size_t>(v)]] = coefficient;
      }
      atom.relation = static_cast<Relation>(uniform(rng, 0, 5));
      atom.constant = uniform(rng, -shape.constant, shape.constant);
      clause.disjuncts.emplace_back(std::move(atom));
    }
    system.clauses.push_back(std::move(clause));
  }
  return system;
}

// Rule syntax -----------------------------------------------------------------

namespace {

class RuleWriter {
public:
  RuleWriter(Rng &rng, std::set<std::string> *features) : rng_(rng), features_(features) {}

  std::string logical(int depth) {
    const int choice = depth <= 0 ? uniform(rng_, 0, 2) : uniform(rng_, 0, 9);
    switch (choice) {
    case 0:
    case 1:
      return comparison(depth);
    case 2:
      return predicate(depth);
    case 3:
      note("not");
      return "not (" + logical(depth - 1) + ")";
    case 4:
      note("and");
      return "(" + logical(depth - 1) + ") and (" + logical(depth - 1) + ")";
    case 5:
      note("or");
      return "(" + logical(depth - 1) + ") or (" + logical(depth - 1) + ")";
    case 6:
    case 7:
      note("if");
      return "if (" + logical(depth - 1) + ") " + comparison(depth - 1);
    case 8:
      note("na-logical");
      return "(" + comparison(depth - 1) + ") or NA";
    default:
      return comparison(depth);
    }
  }

private:
  void note(const std::string &feature) {
    if (features_)
      features_->insert(feature);
  }

  std::string comparison(int depth) {
    static const std::vector<std::string> ops{"<", "<=", "==", "!=", ">=", ">"};
    if (chance(rng_, 0.15)) {
      note("text-compare");
      return ref() + (chance(rng_, 0.5) ? " == " : " != ") + "\"" + pick(rng_, kLevels) + "\"";
    }
    if (chance(rng_, 0.05)) {
      note("na-literal");
      return numeric(depth, false) + " == NA";
    }
    note("compare");
    return numeric(depth, false) + " " + pick(rng_, ops) + " " + numeric(depth, false);
  }

  std::string predicate(int depth) {
    static const std::vector<std::string> names{"is_number", "is_integer", "is_text", "is_na"};
    if (chance(rng_, 0.4)) {
      note("in_set");
      std::string members = "\"" + pick(rng_, kLevels) + "\"";
      if (chance(rng_, 0.5))
        members += ", " + std::to_string(uniform(rng_, -3, 3));
      return "in_set(" + ref() + ", {" + members + "})";
    }
    const auto &name = pick(rng_, names);
    note(name);
    return name + "(" + (chance(rng_, 0.7) ? ref() : numeric(depth - 1, false)) + ")";
  }

  std::string numeric(int depth, bool in_aggregate) {
    const int choice = depth <= 0 ? uniform(rng_, 0, 2) : uniform(rng_, 0, 8);
    switch (choice) {
    case 0:
      return literal();
    case 1:
    case 2:
      return ref();
    case 3:
      if (!in_aggregate) {
        static const std::vector<std::string> fns{"mean", "sum", "min", "max", "count"};
        const auto &fn = pick(rng_, fns);
        note("aggregate");
        note(fn);
        return fn + "(" + numeric(depth - 1, true) + ")";
      }
      return ref();
    case 4:
      note("abs");
      return "abs(" + numeric(depth - 1, in_aggregate) + ")";
    case 5:
      note("negation");
      return "-(" + numeric(depth - 1, in_aggregate) + ")";
    default: {
      static const std::vector<std::string> ops{"+", "-", "*", "/"};
      const auto &op = pick(rng_, ops);
      note("arith" + op);
      return "(" + numeric(depth - 1, in_aggregate) + " " + op + " " +
             numeric(depth - 1, in_aggregate) + ")";
    }
    }
  }

  std::string literal() {
    note("number");
    switch (uniform(rng_, 0, 2)) {
    case 0:
      return std::to_string(uniform(rng_, 0, 100));
    case 1:
      note("negative-number");
      return std::to_string(uniform(rng_, -20, -1));
    default:
      note("decimal");
      return std::to_string(uniform(rng_, 0, 9)) + "." + std::to_string(uniform(rng_, 1, 99));
    }
  }

  std::string ref() {
    static const std::vector<std::string> tables{"t1", "t2", "t3"};
    static const std::vector<std::string> vars{"a", "b", "c"};
    std::string out;
    if (chance(rng_, 0.3)) {
      note("qualifier");
      out = pick(rng_, tables) + ".";
    }
    out += pick(rng_, vars);
    if (chance(rng_, 0.2)) {
      note("lag");
      out += "@" + std::to_string(uniform(rng_, 1, 2));
    }
    note("variable");
    return out;
  }

  Rng &rng_;
  std::set<std::string> *features_;
};

} // namespace

std::string random_rule_text(Rng &rng, std::set<std::string> *features) {
  return RuleWriter(rng, features).logical(uniform(rng, 1, 4));
}

std::string analyzable_schema_text() {
  return "t.x : numeric\n"
         "t.y : numeric\n"
         "t.z : numeric\n"
         "t.g : categorical {a, b, c}\n";
}

std::string random_analyzable_rules(Rng &rng, int count) {
  std::vector<std::string> pool;
  auto linear = [&] {
    static const std::vector<std::string> vars{"x", "y", "z"};
    static const std::vector<std::string> ops{"<", "<=", ">=", ">", "<", "<=", ">=", ">", "==",
                                              "!="};
    static const std::vector<std::string> coefficients{"", "", "2 * ", "-"};
    std::string lhs = pick(rng, coefficients) + pick(rng, vars);
    if (chance(rng, 0.3))
      lhs += (chance(rng, 0.5) ? " + " : " - ") + pick(rng, vars);
    return lhs + " " + pick(rng, ops) + " " + std::to_string(uniform(rng, -3, 3));
  };
  auto categorical = [&] {
    switch (uniform(rng, 0, 2)) {
    case 0: return "g == \"" + pick(rng, kLevels) + "\"";
    case 1: return "g != \"" + pick(rng, kLevels) + "\"";
    default: return "in_set(g, {\"" + pick(rng, kLevels) + "\", \"" + pick(rng, kLevels) + "\"})";
    }
  };
  auto atom = [&] {
    if (!pool.empty() && chance(rng, 0.3))
      return pick(rng, pool);
    std::string a = chance(rng, 0.75) ? linear() : categorical();
    pool.push_back(a);
    return a;
  };

  std::string out;
  for (int i = 0; i < count; ++i) {
    std::string body;
    const int form = uniform(rng, 0, 19);
    if (form < 7)
      body = atom();
    else if (form < 15)
      body = "if (" + atom() + ") " + atom();
    else if (form < 17)
      body = atom() + " or " + atom();
    else if (form < 19)
      body = atom() + " and " + atom();
    else
      body = "not (" + atom() + ")";
    out += "r" + std::to_string(i + 1) + ": " + body + "\n";
  }
  return out;
}

std::string person_schema_text() {
  return "person.age : integer\n"
         "person.income : numeric\n"
         "person.job : categorical {employed, unemployed}\n";
}

std::vector<DataPoint> random_person_points(Rng &rng, int units) {
  std::vector<DataPoint> points;
  for (int u = 1; u <= units; ++u) {
    for (const char *time : {"1", "2"}) {
      const std::string unit = std::to_string(u);
      auto key = [&](const char *variable) { return Key{"person", time, unit, variable}; };
      const int roll_age = uniform(rng, 0, 9);
      Value age = roll_age == 0 ? Value(NA{})
                  : roll_age == 1 ? Value("unknown")
                                  : Value(Rational(uniform(rng, -5, 80)));
      const int roll_income = uniform(rng, 0, 9);
      Value income = roll_income == 0 ? Value(NA{}) : Value(Rational(uniform(rng, -100, 5000)));
      const int roll_job = uniform(rng, 0, 9);
      Value job = roll_job == 0   ? Value(NA{})
                  : roll_job == 1 ? Value(Rational(42))
                                  : Value(roll_job % 2 ? "employed" : "unemployed");
      points.push_back({key("age"), age});
      points.push_back({key("income"), income});
      points.push_back({key("job"), job});
    }
  }
  return points;
}

} // namespace validus::testing
