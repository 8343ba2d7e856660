#include <gtest/gtest.h>

#include "validus/error.hpp"
#include "validus/schema.hpp"

using namespace validus;

TEST(Schema, ParsesPersonDeclaration) {
  const auto s = parse_schema("# person table\n"
                              "person.age : integer [0, 150] nullable\n"
                              "person.job : categorical {employed, \"un employed\"}\n");
  ASSERT_EQ(s.tables.size(), 1u);
  const auto *age = s.find("person", "age");
  ASSERT_NE(age, nullptr);
  EXPECT_EQ(age->kind, VariableKind::Integer);
  EXPECT_TRUE(age->nullable);
  ASSERT_TRUE(age->bounds.has_value());
  EXPECT_EQ(age->bounds->high, Rational(150));
  const auto *job = s.find("person", "job");
  ASSERT_NE(job, nullptr);
  EXPECT_EQ(job->levels, (std::vector<std::string>{"employed", "un employed"}));
  EXPECT_EQ(s.unit_column, "id");
  EXPECT_EQ(s.time_column, "time");
}

TEST(Schema, Directives) {
  const auto s = parse_schema("@unit key\n@time none\nt.v : numeric\n");
  EXPECT_EQ(s.unit_column, "key");
  EXPECT_FALSE(s.time_column.has_value());
  EXPECT_EQ(parse_schema("@time year\nt.v : numeric\n").time_column, "year");
}

TEST(Schema, DuplicateVariable) {
  EXPECT_THROW(parse_schema("person.age : integer\nperson.age : numeric\n"), DuplicateVariable);
}

TEST(Schema, SyntaxErrorsCarryLines) {
  try {
    parse_schema("person.age : integer\n\nperson.job : categorical {}\n");
    FAIL() << "expected SchemaSyntax";
  } catch (const SchemaSyntax &e) {
    EXPECT_EQ(e.line(), 3u);
  }
  EXPECT_THROW(parse_schema("person.age : integer [5, 1]\n"), SchemaSyntax);
  EXPECT_THROW(parse_schema("person.age integer\n"), SchemaSyntax);
  EXPECT_THROW(parse_schema("age : integer\n"), SchemaSyntax);
  EXPECT_THROW(parse_schema("t.v : real\n"), SchemaSyntax);
  EXPECT_THROW(parse_schema("t.v : categorical {a, a}\n"), SchemaSyntax);
}

TEST(Schema, TablesWith) {
  const auto s = parse_schema("b.v : numeric\na.v : numeric\na.w : numeric\n");
  EXPECT_EQ(s.tables_with("v"), (std::vector<std::string>{"a", "b"}));
  EXPECT_TRUE(s.tables_with("zz").empty());
}

TEST(CheckDomain, IntegerAndCategorical) {
  const auto s = parse_schema("person.age : integer [0, 150]\n"
                              "person.job : categorical {employed, unemployed} nullable\n"
                              "person.income : numeric\n");
  const auto &age = *s.find("person", "age");
  const auto &job = *s.find("person", "job");
  const auto &income = *s.find("person", "income");
  EXPECT_EQ(check_domain(25, age), TriBool::True);
  EXPECT_EQ(check_domain("employed", age), TriBool::False);
  EXPECT_EQ(check_domain(Rational(51, 2), age), TriBool::False);
  EXPECT_EQ(check_domain(151, age), TriBool::False);
  EXPECT_EQ(check_domain(NA{}, age), TriBool::False);
  EXPECT_EQ(check_domain(NA{}, job), TriBool::True);
  EXPECT_EQ(check_domain("employed", job), TriBool::True);
  EXPECT_EQ(check_domain("retired", job), TriBool::False);
  EXPECT_EQ(check_domain(42, job), TriBool::False);
  EXPECT_EQ(check_domain(Rational(-3, 2), income), TriBool::True);
}

TEST(CheckDomain, EveryDeclarationAcceptsAndRejectsSomething) {
  const auto s = parse_schema("t.a : integer\nt.b : numeric [1, 2] nullable\n"
                              "t.c : categorical {x}\n");
  const std::vector<Value> probes{NA{}, 0, Rational(3, 2), "x", "y"};
  for (const auto &[table, decls] : s.tables)
    for (const auto &decl : decls) {
      bool pass = false, fail = false;
      for (const auto &v : probes) {
        const auto r = check_domain(v, decl);
        ASSERT_NE(r, TriBool::NA);
        pass = pass || r == TriBool::True;
        fail = fail || r == TriBool::False;
      }
      EXPECT_TRUE(pass && fail) << decl.name;
    }
}
