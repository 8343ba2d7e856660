#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "cli.hpp"

#include "../support/test_data.hpp"

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "validus");
  std::ostringstream out, err;
  const int code = validus::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string data(const std::string &name) { return validus::testing::data_path(name); }

fs::path scratch(const std::string &name, const std::string &content) {
  const auto path = fs::temp_directory_path() / ("validus_cli_" + name);
  std::ofstream(path, std::ios::binary) << content;
  return path;
}

} // namespace

TEST(Cli, ValidatePaperDataset) {
  const auto r = run({"validate", "--rules", data("person.rules"), "--schema",
                      data("person.schema"), "--data", "person=" + data("person.csv")});
  EXPECT_EQ(r.code, 1);
  const auto report = json::parse(r.out);
  EXPECT_EQ(report["entries"].size(), 7u);
  EXPECT_EQ(report["summary"]["false"], 1);
  EXPECT_EQ(report["rules"][0]["signature"], "ssss");
  EXPECT_NE(r.err.find("warning"), std::string::npos);
  for (const auto &e : report["entries"])
    if (e["unit"] == "2" && e["rule"] == "age_integer") {
      EXPECT_EQ(e["result"], "FALSE");
    }
}

TEST(Cli, ValidatePassingDataExitsZero) {
  const auto csv = scratch("ok.csv", "id,age,job\n1,25,unemployed\n2,40,employed\n");
  const auto r = run({"validate", "--rules", data("person.rules"), "--schema",
                      data("person.schema"), "--data", "person=" + csv.string(), "--format", "csv"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "rule,table,unit,time,result");
}

TEST(Cli, StrictNaFails) {
  const auto csv = scratch("na.csv", "id,age,job\n1,NA,unemployed\n");
  const auto rules = scratch("na.rules", "r: age >= 0\n");
  EXPECT_EQ(run({"validate", "--rules", rules.string(), "--schema", data("person.schema"),
                 "--data", "person=" + csv.string()})
                .code,
            0);
  EXPECT_EQ(run({"validate", "--rules", rules.string(), "--schema", data("person.schema"),
                 "--data", "person=" + csv.string(), "--strict-na"})
                .code,
            1);
}

TEST(Cli, InputErrors) {
  const auto bad_rules = scratch("bad.rules", "r: age >=\n");
  auto r = run({"validate", "--rules", bad_rules.string(), "--schema", data("person.schema"),
                "--data", "person=" + data("person.csv")});
  EXPECT_EQ(r.code, 2);
  EXPECT_EQ(r.err.rfind("error: ", 0), 0u);
  EXPECT_EQ(run({"validate", "--rules", "/nonexistent.rules", "--schema", data("person.schema")})
                .code,
            2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({"analyze", "--rules", data("lint.rules")}).code, 2);  // schema required
}

TEST(Cli, Classify) {
  const auto r = run({"classify", "--rules", data("classify.rules"), "--format", "csv"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "rule,signature,level\nrange_check,ssss,0\nconditional,sssm,1\n"
                   "unit_mean,ssms,1\nprice_change,smss,1\nmean_change,smms,2\n"
                   "mirror_flows,msmm,3\n");
}

TEST(Cli, AnalyzeAndLint) {
  auto r = run({"analyze", "--rules", data("gender_income.rules"), "--schema",
                data("analysis.schema")});
  EXPECT_EQ(r.code, 0);
  const auto report = json::parse(r.out);
  ASSERT_EQ(report["findings"].size(), 1u);
  EXPECT_EQ(report["findings"][0]["kind"], "PartialInfeasibility");
  EXPECT_EQ(report["findings"][0]["value"], "male");
  EXPECT_FALSE(report["findings"][0]["probes"].empty());

  r = run({"analyze", "--rules", data("infeasible.rules"), "--schema", data("analysis.schema")});
  EXPECT_EQ(r.code, 3);
  EXPECT_TRUE(json::parse(r.out)["summary"]["infeasible"].get<bool>());

  r = run({"lint", "--rules", data("lint.rules"), "--schema", data("analysis.schema"), "--format",
           "csv"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("Tautology,always"), std::string::npos);
  EXPECT_NE(r.out.find("Contradiction,never"), std::string::npos);
  EXPECT_EQ(r.out.find(",valid,"), std::string::npos);
}

TEST(Cli, Simplify) {
  const auto log = fs::temp_directory_path() / "validus_cli_simplify.json";
  auto r = run({"simplify", "--rules", data("nonconstraining.rules"), "--schema",
                data("analysis.schema"), "--log", log.string()});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "positive: y > 0\nbelow_one: if (x < 1) y > 1\n");
  std::ifstream in(log);
  const auto steps = json::parse(in)["findings"];
  ASSERT_EQ(steps.size(), 1u);
  EXPECT_EQ(steps[0]["kind"], "NonconstrainingClause");

  const auto out = fs::temp_directory_path() / "validus_cli_simplified.rules";
  r = run({"simplify", "--rules", data("redundant.rules"), "--schema", data("analysis.schema"),
           "-o", out.string()});
  EXPECT_EQ(r.code, 0);
  std::ifstream written(out);
  EXPECT_EQ(std::string(std::istreambuf_iterator<char>(written), {}), "x_at_least_one: x >= 1\n");
  EXPECT_NE(r.err.find("Redundant x_nonnegative"), std::string::npos);

  EXPECT_EQ(run({"simplify", "--rules", data("infeasible.rules"), "--schema",
                 data("analysis.schema")})
                .code,
            3);
}
