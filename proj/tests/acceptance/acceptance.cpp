// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any
// failure.

#include <array>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>

#include <nlohmann/json.hpp>

#include "cli.hpp"
#include "generators.hpp"
#include "oracles.hpp"
#include "test_data.hpp"
#include "validus/analyzer.hpp"
#include "validus/classifier.hpp"
#include "validus/csv.hpp"
#include "validus/evaluator.hpp"
#include "validus/format.hpp"
#include "validus/parser.hpp"
#include "validus/schema.hpp"
#include "validus/solver.hpp"

using namespace validus;
namespace vt = validus::testing;

namespace {

// Collects the reasons a criterion failed; empty means PASS.
struct Check {
  std::vector<std::string> failures;
  std::string detail;

  void expect(bool ok, const std::string &what) {
    if (!ok)
      failures.push_back(what);
  }
};

const Schema &analysis_schema() {
  static const Schema s = parse_schema(vt::read_data("analysis.schema"));
  return s;
}

std::string kinds_of(const std::vector<Finding> &findings) {
  std::string out;
  for (const auto &f : findings)
    out += (out.empty() ? "" : ", ") + std::string(to_string(f.kind)) + "(" +
           (f.rule.empty() ? f.variable + (f.value.empty() ? "" : "=" + f.value) : f.rule) + ")";
  return out;
}

bool has_finding(const std::vector<Finding> &findings, FindingKind kind, const std::string &rule) {
  for (const auto &f : findings)
    if (f.kind == kind && f.rule == rule)
      return true;
  return false;
}

// Bodies of `rules` equal, in order, the expressions in `expected`.
bool same_bodies(const RuleSet &rules, const std::vector<std::string> &expected) {
  if (rules.size() != expected.size())
    return false;
  for (std::size_t i = 0; i < expected.size(); ++i)
    if (!equal(rules[i].body, parse_expression(expected[i])))
      return false;
  return true;
}

bool probes_replay(const std::vector<Finding> &findings, const RuleSet &rules,
                   const Schema &schema) {
  for (const auto &f : findings)
    for (const auto &p : f.probes)
      if (replay(p, rules, schema) != p.satisfiable)
        return false;
  return true;
}

// 1 ---------------------------------------------------------------------------

Check golden_corpus() {
  Check check;
  const auto &schema = analysis_schema();

  const auto a = parse_rules(vt::read_data("gender_income.rules"));
  const auto ra = analyze_ruleset(a, schema);
  check.expect(!ra.infeasible && is_satisfiable(compile_rules(a, schema)).satisfiable,
               "a: set must be satisfiable");
  check.expect(ra.findings.size() == 1 &&
                   ra.findings[0].kind == FindingKind::PartialInfeasibility &&
                   ra.findings[0].variable == "gender" && ra.findings[0].value == "male",
               "a: expected only PartialInfeasibility(gender=male), got " + kinds_of(ra.findings));
  check.expect(probes_replay(ra.findings, a, schema), "a: probe replay");

  const auto b = parse_rules(vt::read_data("redundant.rules"));
  const auto rb = analyze_ruleset(b, schema);
  check.expect(rb.findings.size() == 1 && rb.findings[0].kind == FindingKind::Redundant &&
                   rb.findings[0].rule == "x_nonnegative",
               "b: expected Redundant(x_nonnegative), got " + kinds_of(rb.findings));
  check.expect(same_bodies(simplify_ruleset(b, schema).rules, {"x >= 1"}),
               "b: simplify must yield {x >= 1}");

  const auto c = parse_rules(vt::read_data("nonrelaxing.rules"));
  const auto rc = analyze_ruleset(c, schema);
  check.expect(has_finding(rc.findings, FindingKind::NonrelaxingClause, "conditional"),
               "c: expected NonrelaxingClause(conditional), got " + kinds_of(rc.findings));
  check.expect(same_bodies(simplify_ruleset(c, schema).rules, {"y >= 0", "x >= 0"}),
               "c: simplify must yield {y >= 0, x >= 0}");

  const auto d = parse_rules(vt::read_data("nonconstraining.rules"));
  const auto rd = analyze_ruleset(d, schema);
  check.expect(has_finding(rd.findings, FindingKind::NonconstrainingClause, "positive"),
               "d: expected NonconstrainingClause(positive), got " + kinds_of(rd.findings));
  check.expect(same_bodies(simplify_ruleset(d, schema).rules, {"y > 0", "if (x < 1) y > 1"}),
               "d: simplify must yield {y > 0, if (x < 1) y > 1}");

  check.expect(probes_replay(rb.findings, b, schema) && probes_replay(rc.findings, c, schema) &&
                   probes_replay(rd.findings, d, schema),
               "b-d: probe replay");
  check.detail = "4 worked rule sets";
  return check;
}

// 2 ---------------------------------------------------------------------------

Check lint() {
  Check check;
  const auto rules = parse_rules(vt::read_data("lint.rules"));
  const auto always = lint_rule(rules[0], analysis_schema());
  const auto never = lint_rule(rules[1], analysis_schema());
  const auto valid = lint_rule(rules[2], analysis_schema());
  check.expect(always && always->kind == FindingKind::Tautology, "x >= 0 or x <= 1 not Tautology");
  check.expect(never && never->kind == FindingKind::Contradiction,
               "x >= 0 and x <= -1 not Contradiction");
  check.expect(!valid, "x >= 0 flagged");
  check.detail = "3 rules";
  return check;
}

// 3 ---------------------------------------------------------------------------

Check classification() {
  Check check;
  const auto corpus = parse_rules(vt::read_data("classify.rules"));
  const std::vector<std::string> expected{"ssss", "sssm", "ssms", "smss", "smms", "msmm"};
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const auto code = classify_rule(corpus[i]).code();
    check.expect(i < expected.size() && code == expected[i],
                 corpus[i].name + " classified " + code);
  }

  std::set<std::string> admissible;
  for (const auto &sig : RuleSignature::all())
    admissible.insert(sig.code());
  const std::set<std::string> excluded{"msss", "mssm", "msms", "mmss", "mmsm", "mmms"};
  check.expect(admissible.size() == 10, "admissible signature table size");
  for (const auto &code : excluded)
    check.expect(!admissible.contains(code) && !RuleSignature::from_code(code),
                 "excluded signature constructible: " + code);

  vt::Rng rng(101);
  std::set<std::string> features, seen;
  const int total = 2000;
  for (int i = 0; i < total; ++i) {
    const auto rules = parse_rules("r: " + vt::random_rule_text(rng, &features));
    const auto sig = classify_rule(rules[0]);
    seen.insert(sig.code());
    check.expect(admissible.contains(sig.code()) && !excluded.contains(sig.code()),
                 "generated rule classified " + sig.code());
    check.expect(sig.level() == static_cast<int>(std::ranges::count(sig.code(), 'm')),
                 "level mismatch for " + sig.code());
  }
  const std::vector<std::string> required{
      "not", "and", "or", "if", "na-logical", "text-compare", "na-literal", "compare",
      "in_set", "is_number", "is_integer", "is_text", "is_na", "aggregate", "mean", "sum",
      "min", "max", "count", "abs", "negation", "arith+", "arith-", "arith*", "arith/",
      "number", "negative-number", "decimal", "qualifier", "lag", "variable"};
  for (const auto &f : required)
    check.expect(features.contains(f), "generator never produced feature " + f);
  check.detail = std::to_string(corpus.size()) + " corpus rules, " + std::to_string(total) +
                 " generated rules, " + std::to_string(seen.size()) + " distinct signatures";
  return check;
}

// 4 ---------------------------------------------------------------------------

Check solver_oracles() {
  Check check;
  vt::Rng rng(202);
  const int per_oracle = 600;
  int agree = 0, sat = 0;
  for (int i = 0; i < 2 * per_oracle; ++i) {
    vt::SystemShape shape;
    shape.single_variable = i < per_oracle;
    // Short clauses make unsatisfiable systems common enough to matter.
    shape.disjuncts = i % 2 == 0 ? 1 : 3;
    const auto system = vt::random_system(rng, shape);
    const auto result = is_satisfiable(system, true);
    const bool expected =
        shape.single_variable ? vt::grid_oracle(system) : vt::simplex_oracle(system);
    const bool sound = !result.witness || check_assignment(system, *result.witness);
    if (result.satisfiable == expected && sound && result.witness.has_value() == expected)
      ++agree;
    else
      check.failures.push_back("system " + std::to_string(i) + " disagrees");
    sat += expected;
  }
  check.detail = std::to_string(agree) + "/" + std::to_string(2 * per_oracle) + " agree (" +
                 std::to_string(per_oracle) + " grid, " + std::to_string(per_oracle) +
                 " simplex; " + std::to_string(sat) + " satisfiable)";
  return check;
}

// 5 ---------------------------------------------------------------------------

// Every rule of `to` holds wherever all rules of `from` hold.
bool implies_all(const RuleSet &from, const RuleSet &to, const Schema &schema) {
  const auto base = compile_rules(from, schema);
  for (const auto &rule : to) {
    auto system = base;
    system.conjoin(compile_expr(rule.body, rule, schema, true));
    if (is_satisfiable(system).satisfiable)
      return false;
  }
  return true;
}

std::string soundness_failure(const RuleSet &rules, const Schema &schema) {
  const auto result = simplify_ruleset(rules, schema);
  if (!implies_all(rules, result.rules, schema) || !implies_all(result.rules, rules, schema))
    return "S and S' differ on\n" + format_ruleset(rules) + "=>\n" + format_ruleset(result.rules);
  const auto again = analyze_ruleset(result.rules, schema);
  for (const auto &f : again.findings)
    if (f.kind == FindingKind::NonrelaxingClause || f.kind == FindingKind::NonconstrainingClause ||
        f.kind == FindingKind::Redundant)
      return "re-analysis found " + std::string(to_string(f.kind)) + "(" + f.rule + ") in\n" +
             format_ruleset(result.rules);
  return {};
}

Check simplification() {
  Check check;
  int checked = 0;
  for (const char *file : {"gender_income.rules", "redundant.rules", "nonrelaxing.rules",
                           "nonconstraining.rules", "lint.rules"}) {
    const auto rules = parse_rules(vt::read_data(file));
    if (!is_satisfiable(compile_rules(rules, analysis_schema())).satisfiable)
      continue;
    const auto failure = soundness_failure(rules, analysis_schema());
    check.expect(failure.empty(), std::string(file) + ": " + failure);
    ++checked;
  }

  const auto schema = parse_schema(vt::analyzable_schema_text());
  vt::Rng rng(303);
  int random = 0, steps = 0;
  while (random < 300) {
    const auto rules = parse_rules(vt::random_analyzable_rules(rng, vt::uniform(rng, 2, 6)));
    if (!is_satisfiable(compile_rules(rules, schema)).satisfiable)
      continue;
    const auto failure = soundness_failure(rules, schema);
    check.expect(failure.empty(), failure);
    steps += static_cast<int>(simplify_ruleset(rules, schema).log.size());
    ++random;
  }
  check.detail = std::to_string(checked) + " corpus sets, " + std::to_string(random) +
                 " random satisfiable sets, " + std::to_string(steps) + " rewrite steps";
  return check;
}

// 6 ---------------------------------------------------------------------------

constexpr auto F = TriBool::False;
constexpr auto T = TriBool::True;
constexpr auto N = TriBool::NA;
constexpr std::array<TriBool, 3> kValues{F, T, N};

// Rows and columns in the order False, True, NA.
constexpr TriBool kAnd[3][3] = {{F, F, F}, {F, T, N}, {F, N, N}};
constexpr TriBool kOr[3][3] = {{F, T, N}, {T, T, T}, {N, T, N}};
constexpr TriBool kIf[3][3] = {{T, T, T}, {F, T, N}, {N, T, N}};
constexpr TriBool kNot[3] = {T, F, N};

Check three_valued() {
  Check check;

  // Route 1: the connective functions. Route 2: DSL connectives evaluated
  // over atoms `a > 0`, `b > 0`, with a, b in {-1, 1, NA}.
  const Value cells[] = {Value(-1), Value(1), Value(NA{})};
  std::vector<DataPoint> points;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      const auto unit = std::to_string(3 * i + j);
      points.push_back({{"t", std::nullopt, unit, "a"}, cells[i]});
      points.push_back({{"t", std::nullopt, unit, "b"}, cells[j]});
    }
  const auto data = build_dataset(points);
  const DataIndex index(data);
  auto eval = [&](const char *text, int i, int j) {
    const Binding binding{&index, "t", std::to_string(3 * i + j), std::nullopt};
    return std::get<TriBool>(eval_expr(parse_expression(text), binding, EvalOptions{}));
  };

  int cells_checked = 0;
  for (int i = 0; i < 3; ++i) {
    check.expect(kleene_not(kValues[i]) == kNot[i], "not table");
    check.expect(kleene_apply(LogicalOp::Not, {kValues[i]}) == kNot[i], "not via apply");
    check.expect(eval("not (a > 0)", i, 0) == kNot[i], "not via DSL");
    for (int j = 0; j < 3; ++j) {
      const auto a = kValues[i], b = kValues[j];
      check.expect(kleene_and(a, b) == kAnd[i][j] && kleene_apply(LogicalOp::And, {a, b}) == kAnd[i][j],
                   "and table");
      check.expect(kleene_or(a, b) == kOr[i][j] && kleene_apply(LogicalOp::Or, {a, b}) == kOr[i][j],
                   "or table");
      check.expect(kleene_implies(a, b) == kIf[i][j] &&
                       kleene_apply(LogicalOp::If, {a, b}) == kIf[i][j],
                   "if table");
      check.expect(eval("a > 0 and b > 0", i, j) == kAnd[i][j], "and via DSL");
      check.expect(eval("a > 0 or b > 0", i, j) == kOr[i][j], "or via DSL");
      check.expect(eval("if (a > 0) b > 0", i, j) == kIf[i][j], "if via DSL");
      cells_checked += 3;
    }
  }

  // NA monotonicity under random single-value mutations.
  const auto schema = parse_schema(vt::person_schema_text());
  const auto rules = parse_rules(vt::read_data("monotone.rules"));
  vt::Rng rng(404);
  int mutations = 0, moved_to_na = 0;
  while (mutations < 600) {
    auto base_points = vt::random_person_points(rng, vt::uniform(rng, 2, 6));
    const auto base = evaluate_ruleset(rules, build_dataset(base_points), schema);
    for (int k = 0; k < 10; ++k, ++mutations) {
      auto mutated = base_points;
      const auto at = static_cast<std::size_t>(vt::uniform(rng, 0, static_cast<int>(mutated.size()) - 1));
      mutated[at].value = NA{};
      const auto after = evaluate_ruleset(rules, build_dataset(mutated), schema);
      if (after.entries.size() != base.entries.size()) {
        check.failures.push_back("mutation changed the entry set");
        continue;
      }
      for (std::size_t e = 0; e < base.entries.size(); ++e) {
        const auto before_v = base.entries[e].result, after_v = after.entries[e].result;
        if (before_v != TriBool::NA && after_v != TriBool::NA && before_v != after_v)
          check.failures.push_back("rule " + base.entries[e].rule + " flipped after NA at " +
                                   to_string(mutated[at].key));
        moved_to_na += before_v != TriBool::NA && after_v == TriBool::NA;
      }
    }
  }
  check.detail = std::to_string(cells_checked) + " binary cells + 3 negation cells (two routes), " +
                 std::to_string(mutations) + " NA mutations, " + std::to_string(moved_to_na) +
                 " entries moved to NA";
  return check;
}

// 7 ---------------------------------------------------------------------------

Check end_to_end() {
  Check check;
  std::ostringstream out, err;
  const int code = cli::run({"validus", "validate", "--rules", vt::data_path("person.rules"), "--schema",
                             vt::data_path("person.schema"), "--data",
                             "person=" + vt::data_path("person.csv")},
                            out, err);
  check.expect(code == 1, "exit code " + std::to_string(code) + ", expected 1");
  nlohmann::json report;
  try {
    report = nlohmann::json::parse(out.str());
  } catch (const std::exception &e) {
    check.failures.push_back(std::string("report is not JSON: ") + e.what());
    return check;
  }
  std::map<std::pair<std::string, std::string>, std::string> result;
  for (const auto &e : report["entries"])
    result[{e["rule"].get<std::string>(), e["unit"].get<std::string>()}] = e["result"];
  for (const char *rule : {"age_integer", "age_nonnegative", "employed_adult"})
    check.expect(result[{rule, "1"}] == "TRUE", std::string("person 1 ") + rule);
  check.expect(result[{"age_integer", "2"}] == "FALSE", "person 2 is_integer(age) must be FALSE");
  check.expect(result[{"age_nonnegative", "2"}] == "NA", "person 2 age >= 0 must be NA");
  bool mismatch = false;
  for (const auto &d : report["summary"]["diagnostics"])
    mismatch = mismatch || (d["kind"] == "TypeMismatch" && d["rule"] == "age_nonnegative" &&
                            d["unit"] == "2");
  check.expect(mismatch, "no TypeMismatch diagnostic for person 2");
  check.detail = std::to_string(report["entries"].size()) + " entries, exit " + std::to_string(code);
  return check;
}

// 8 ---------------------------------------------------------------------------

Check round_trip() {
  Check check;
  int rule_count = 0;
  for (const auto &entry : std::filesystem::directory_iterator(VALIDUS_TEST_DATA_DIR)) {
    if (entry.path().extension() != ".rules")
      continue;
    const auto rules = parse_rules(vt::read_data(entry.path().filename().string()));
    check.expect(parse_rules(format_ruleset(rules)) == rules,
                 entry.path().filename().string() + " does not round-trip");
    rule_count += static_cast<int>(rules.size());
  }
  vt::Rng rng(505);
  for (int i = 0; i < 2000; ++i, ++rule_count) {
    const auto rules = parse_rules("r: " + vt::random_rule_text(rng));
    check.expect(parse_rules(format_ruleset(rules)) == rules,
                 "generated rule does not round-trip: " + format_ruleset(rules));
    const auto negated = RuleSet({negate_rule(rules[0])});
    check.expect(parse_rules(format_ruleset(negated)) == negated,
                 "negated rule does not round-trip: " + format_ruleset(negated));
  }

  int datasets = 0;
  const auto person = build_dataset(ingest_table("person", vt::read_data("person.csv"), "id",
                                                 std::nullopt));
  check.expect(build_dataset(ingest_table("person", export_table(person, "person", "id", std::nullopt),
                                          "id", std::nullopt)) == person,
               "person.csv does not round-trip");
  ++datasets;
  for (int i = 0; i < 300; ++i, ++datasets) {
    const auto data = build_dataset(vt::random_person_points(rng, vt::uniform(rng, 1, 10)));
    check.expect(build_dataset(ingest_table("person", export_table(data, "person"))) == data,
                 "random dataset does not round-trip");
  }
  check.detail = std::to_string(rule_count) + " rules, " + std::to_string(datasets) + " datasets";
  return check;
}

} // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Check()>>> criteria{
      {"golden rule-set corpus", golden_corpus},
      {"tautology/contradiction lint", lint},
      {"rule classification", classification},
      {"solver agrees with oracles", solver_oracles},
      {"simplification soundness", simplification},
      {"three-valued semantics", three_valued},
      {"end-to-end validation", end_to_end},
      {"round trips", round_trip},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Check check;
    try {
      check = criteria[i].second();
    } catch (const std::exception &e) {
      check.failures.push_back(std::string("exception: ") + e.what());
    }
    const bool pass = check.failures.empty();
    failed += !pass;
    std::cout << (pass ? "PASS" : "FAIL") << "  criterion " << i + 1 << ": "
              << criteria[i].first;
    if (!check.detail.empty())
      std::cout << " (" << check.detail << ")";
    std::cout << '\n';
    const std::size_t shown = std::min<std::size_t>(check.failures.size(), 5);
    for (std::size_t k = 0; k < shown; ++k)
      std::cout << "      " << check.failures[k] << '\n';
    if (check.failures.size() > shown)
      std::cout << "      ... " << check.failures.size() - shown << " more\n";
  }
  std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed")
            << '\n';
  return failed == 0 ? 0 : 1;
}
