#include <gtest/gtest.h>

#include "validus/constraint.hpp"
#include "validus/error.hpp"
#include "validus/parser.hpp"
#include "validus/schema.hpp"

#include "../support/test_data.hpp"

using namespace validus;
namespace vt = validus::testing;

namespace {

const Schema &schema() {
  static const Schema s = parse_schema(vt::read_data("analysis.schema"));
  return s;
}

ConstraintSystem compile(const std::string &body, bool negated = false) {
  const auto rules = parse_rules("r: " + body);
  return compile_expr(rules[0].body, rules[0], schema(), negated);
}

std::vector<std::string> clause_texts(const ConstraintSystem &system) {
  std::vector<std::string> out;
  for (const auto &c : system.clauses)
    out.push_back(to_string(c));
  return out;
}

} // namespace

TEST(Compile, NormalizesLinearAtoms) {
  EXPECT_EQ(clause_texts(compile("2 * x >= 4")), std::vector<std::string>{"x >= 2"});
  EXPECT_EQ(clause_texts(compile("-x > 1")), std::vector<std::string>{"x < -1"});
  EXPECT_EQ(clause_texts(compile("x + 1 <= y")), std::vector<std::string>{"x - y <= -1"});
  EXPECT_EQ(clause_texts(compile("3 * (x - y) / 3 == 0")), std::vector<std::string>{"x - y == 0"});
  EXPECT_EQ(compile("2 * x >= 4").clauses, compile("x >= 2").clauses);
}

TEST(Compile, ImplicationAndNegation) {
  EXPECT_EQ(clause_texts(compile("if (gender == \"male\") income > 2000")),
            std::vector<std::string>{"gender == \"female\" or income > 2000"});
  EXPECT_EQ(clause_texts(compile("if (x >= 0) y >= 0", true)),
            (std::vector<std::string>{"x >= 0", "y < 0"}));
  EXPECT_EQ(clause_texts(compile("x != 3")), std::vector<std::string>{"x < 3 or x > 3"});
  EXPECT_EQ(clause_texts(compile("(x > 0 and y > 0) or x < -1")),
            (std::vector<std::string>{"x > 0 or x < -1", "y > 0 or x < -1"}));
}

TEST(Compile, CategoricalMembership) {
  EXPECT_EQ(clause_texts(compile("in_set(gender, {\"male\", \"female\"})")).size(), 0u);
  EXPECT_EQ(clause_texts(compile("gender != \"male\"")),
            std::vector<std::string>{"gender == \"female\""});
  // An undeclared level can never match: a false clause.
  const auto pilot = compile("gender == \"pilot\"");
  ASSERT_EQ(pilot.clauses.size(), 1u);
  EXPECT_TRUE(pilot.clauses[0].disjuncts.empty());
}

TEST(Compile, ConstantFolding) {
  EXPECT_TRUE(compile("x > 0 or 1 < 2").clauses.empty());
  const auto folded = compile("x > 0 or 2 < 1");
  EXPECT_EQ(clause_texts(folded), std::vector<std::string>{"x > 0"});
  EXPECT_EQ(clause_texts(compile("x - x > 0")), std::vector<std::string>{"false"});
}

TEST(Compile, OutsideTheFragment) {
  for (const char *body : {"mean(x) > 0", "x@1 > 0", "abs(x) < 1", "is_na(x)", "x * y > 0",
                           "x == NA", "1 / x > 0"})
    EXPECT_THROW(compile(body), UnsupportedForAnalysis) << body;
  EXPECT_THROW(compile("height > 0"), UnknownVariable);
}

TEST(Compile, DomainClausesAndNames) {
  const auto s = parse_schema("@time none\na.v : numeric [0, 10]\nb.v : numeric\na.w : numeric\n");
  EXPECT_EQ(analysis_name(s, "a", "v"), "a.v");
  EXPECT_EQ(analysis_name(s, "a", "w"), "w");
  const auto rules = parse_rules("r: a.v <= w");
  const auto system = compile_rules(rules, s);
  EXPECT_EQ(clause_texts(system),
            (std::vector<std::string>{"a.v - w <= 0", "a.v >= 0", "a.v <= 10"}));
  for (const auto &c : system.clauses)
    if (c.origin != "r") {
      EXPECT_EQ(c.origin, "schema");
    }
}
