#include <gtest/gtest.h>

#include "validus/dataset.hpp"
#include "validus/error.hpp"

using namespace validus;

namespace {

Key person(const std::string &unit, const std::string &variable) {
  return {"person", std::nullopt, unit, variable};
}

} // namespace

TEST(Dataset, BuildsTotalMap) {
  const std::vector<DataPoint> points{{person("1", "age"), 25}, {person("1", "job"), "unemployed"},
                                      {person("2", "age"), "employed"}, {person("2", "job"), 42}};
  const auto d = build_dataset(points);
  EXPECT_EQ(d.size(), 4u);
  EXPECT_EQ(d.get_value(person("2", "age")), Value("employed"));
  EXPECT_EQ(get_value(d, person("2", "job")), Value(42));
}

TEST(Dataset, DuplicateKeyIsRejected) {
  const std::vector<DataPoint> points{{person("1", "age"), 25}, {person("1", "age"), 26}};
  EXPECT_THROW(build_dataset(points), DuplicateKey);
}

TEST(Dataset, DeclaredKeysFillWithNA) {
  const std::vector<DataPoint> points{{person("1", "age"), 25}};
  const std::set<Key> declared{person("1", "age"), person("1", "job")};
  const auto d = build_dataset(points, declared);
  EXPECT_EQ(d.size(), 2u);
  EXPECT_TRUE(d.get_value(person("1", "job")).is_na());
  EXPECT_EQ(d.key_set(), declared);
}

TEST(Dataset, UndeclaredPointIsRejected) {
  const std::vector<DataPoint> points{{person("1", "age"), 25}, {person("1", "income"), 3}};
  const std::set<Key> declared{person("1", "age")};
  EXPECT_THROW(build_dataset(points, declared), UnknownKey);
}

TEST(Dataset, MissingKeyLookupThrows) {
  const auto d = build_dataset(std::vector<DataPoint>{{person("1", "age"), 25}});
  EXPECT_THROW((void)d.get_value(person("3", "age")), MissingKey);
}

TEST(Dataset, PointsRoundTrip) {
  const std::vector<DataPoint> points{{person("2", "age"), 1}, {person("1", "age"), NA{}}};
  const auto d = build_dataset(points);
  EXPECT_EQ(build_dataset(d.to_points()), d);
}

TEST(Identifiers, NumericIdsSortByValue) {
  EXPECT_TRUE(id_less("2", "10"));
  EXPECT_FALSE(id_less("10", "2"));
  EXPECT_TRUE(id_less("10", "a"));
  EXPECT_TRUE(id_less("a", "b"));
  EXPECT_FALSE(id_less("a", "a"));
}

TEST(Identifiers, KeyText) {
  EXPECT_EQ(to_string(Key{"person", "2020", "1", "age"}), "(person, 2020, 1, age)");
  EXPECT_EQ(to_string(person("1", "age")), "(person, 1, age)");
}
