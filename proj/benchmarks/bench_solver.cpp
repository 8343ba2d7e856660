#include <benchmark/benchmark.h>

#include <string>

#include "validus/analyzer.hpp"
#include "validus/linear.hpp"
#include "validus/parser.hpp"
#include "validus/schema.hpp"
#include "validus/solver.hpp"

using namespace validus;

namespace {

// x_i - x_{i+1} <= -1 for a chain of n variables, plus x_0 >= 0.
std::vector<Inequality> chain(std::size_t n) {
  std::vector<Inequality> rows;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    std::vector<Rational> c(n);
    c[i] = -1;
    c[i + 1] = 1;
    rows.push_back({c, -1, false});
  }
  std::vector<Rational> c(n);
  c[0] = 1;
  rows.push_back({c, 0, false});
  return rows;
}

const Schema &schema() {
  static const Schema s = parse_schema("@time none\n"
                                       "t.g : categorical {a, b, c, d}\n"
                                       "t.x : numeric\nt.y : numeric\nt.z : numeric\n");
  return s;
}

// Conditionals keyed on g that all stay satisfiable.
std::string conditional_rules(int n) {
  static const char *levels[] = {"a", "b", "c", "d"};
  std::string out;
  for (int i = 0; i < n; ++i)
    out += "r" + std::to_string(i) + ": if (g == \"" + levels[i % 4] + "\") x + " +
           std::to_string(i % 3 + 1) + " * y >= " + std::to_string(i) + "\n";
  return out + "bound: x + y + z <= 100\n";
}

} // namespace

static void BM_FourierMotzkinChain(benchmark::State &state) {
  const auto rows = chain(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state)
    benchmark::DoNotOptimize(find_point(rows, static_cast<std::size_t>(state.range(0))));
}
BENCHMARK(BM_FourierMotzkinChain)->Arg(4)->Arg(8)->Arg(16);

static void BM_Satisfiable(benchmark::State &state) {
  const auto system = compile_rules(parse_rules(conditional_rules(static_cast<int>(state.range(0)))),
                                    schema());
  for (auto _ : state)
    benchmark::DoNotOptimize(is_satisfiable(system, true));
}
BENCHMARK(BM_Satisfiable)->Arg(4)->Arg(8)->Arg(16);

static void BM_Analyze(benchmark::State &state) {
  const auto rules = parse_rules(conditional_rules(static_cast<int>(state.range(0))));
  for (auto _ : state)
    benchmark::DoNotOptimize(analyze_ruleset(rules, schema()));
}
BENCHMARK(BM_Analyze)->Arg(4)->Arg(8);
