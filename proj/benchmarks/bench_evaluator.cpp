#include <benchmark/benchmark.h>

#include <string>

#include "validus/csv.hpp"
#include "validus/evaluator.hpp"
#include "validus/parser.hpp"
#include "validus/schema.hpp"

using namespace validus;

namespace {

Dataset people(int units, int occasions) {
  std::string csv = "id,time,age,income,job\n";
  for (int u = 1; u <= units; ++u)
    for (int t = 1; t <= occasions; ++t)
      csv += std::to_string(u) + "," + std::to_string(2000 + t) + "," +
             std::to_string((u * 7 + t) % 90) + "," + std::to_string(u * 13 % 5000) + "," +
             (u % 3 ? "employed" : "unemployed") + "\n";
  return build_dataset(ingest_table("person", csv));
}

const char *kRules = "age_range: age >= 0 and age <= 120\n"
                     "employed_adult: if (job == \"employed\") age >= 15\n"
                     "mean_age: mean(age) >= 5\n"
                     "growth: abs(income - income@1) <= 0.5 * income@1 + 1000\n";

} // namespace

static void BM_EvaluateRuleset(benchmark::State &state) {
  const auto schema = parse_schema("person.age : integer\nperson.income : numeric\n"
                                   "person.job : categorical {employed, unemployed}\n");
  const auto rules = parse_rules(kRules);
  const auto data = people(static_cast<int>(state.range(0)), 3);
  for (auto _ : state)
    benchmark::DoNotOptimize(evaluate_ruleset(rules, data, schema));
  state.SetItemsProcessed(state.iterations() * state.range(0) * 3);
}
BENCHMARK(BM_EvaluateRuleset)->Arg(100)->Arg(1000);

static void BM_ParseRules(benchmark::State &state) {
  for (auto _ : state)
    benchmark::DoNotOptimize(parse_rules(kRules));
}
BENCHMARK(BM_ParseRules);
