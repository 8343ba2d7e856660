#include "cli.hpp"

#include <fstream>
#include <map>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "validus/analyzer.hpp"
#include "validus/classifier.hpp"
#include "validus/csv.hpp"
#include "validus/error.hpp"
#include "validus/evaluator.hpp"
#include "validus/format.hpp"
#include "validus/parser.hpp"

namespace validus::cli {

namespace {

using Json = nlohmann::ordered_json;

struct Config {
  std::string command;
  std::string rules_path;
  std::string schema_path;
  std::vector<std::string> data;
  std::string na_policy = "propagate";
  bool strict_na = false;
  std::string format = "json";
  std::string output_path;
  std::string log_path;
  std::optional<std::string> unit_column;
  std::optional<std::string> time_column;
};

class InputError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw InputError(path + ": cannot open file");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

/// Runs `load` and prefixes any library error with the file it came from.
template <class F> auto from_file(const std::string &path, F load) {
  const std::string text = read_file(path);
  try {
    return load(text);
  } catch (const Error &e) {
    throw InputError(path + ": " + e.what());
  }
}

RuleSet load_rules(const Config &config) {
  return from_file(config.rules_path, [](const std::string &text) { return parse_rules(text); });
}

Schema load_schema(const Config &config) {
  auto schema =
      from_file(config.schema_path, [](const std::string &text) { return parse_schema(text); });
  if (config.unit_column)
    schema.unit_column = *config.unit_column;
  if (config.time_column) {
    if (config.time_column->empty() || *config.time_column == "none")
      schema.time_column.reset();
    else
      schema.time_column = *config.time_column;
  }
  return schema;
}

Dataset load_data(const Config &config, const Schema &schema) {
  std::vector<DataPoint> points;
  std::map<std::string, std::string> seen;
  for (const auto &spec : config.data) {
    const auto eq = spec.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == spec.size())
      throw InputError("--data expects table=file, got '" + spec + "'");
    const std::string table = spec.substr(0, eq);
    const std::string path = spec.substr(eq + 1);
    if (!schema.tables.contains(table))
      throw InputError("--data: table '" + table + "' is not declared in the schema");
    if (!seen.emplace(table, path).second)
      throw InputError("--data: table '" + table + "' given twice");
    auto table_points = from_file(path, [&](const std::string &text) {
      return ingest_table(table, text, schema.unit_column, schema.time_column);
    });
    points.insert(points.end(), table_points.begin(), table_points.end());
  }
  return build_dataset(points);
}

// Report pieces -------------------------------------------------------------

Json rule_json(const Rule &rule, const Schema *schema) {
  const auto signature = classify_rule(rule, schema);
  return {{"name", rule.name},
          {"text", format_expr(rule.body)},
          {"signature", signature.code()},
          {"level", signature.level()}};
}

Json rules_json(const RuleSet &rules, const Schema *schema) {
  Json out = Json::array();
  for (const auto &rule : rules)
    out.push_back(rule_json(rule, schema));
  return out;
}

Json optional_text(const std::optional<std::string> &value) {
  return value ? Json(*value) : Json(nullptr);
}

Json nonempty(const std::string &value) { return value.empty() ? Json(nullptr) : Json(value); }

Json scope_json(Json object, const Scope &scope) {
  object["table"] = scope.table;
  object["unit"] = scope.unit.value_or("ALL");
  object["time"] = optional_text(scope.time);
  return object;
}

Json probe_json(const Probe &probe) {
  return {{"rules", probe.rules},
          {"assumptions", probe.assumptions},
          {"context", optional_text(probe.context)},
          {"satisfiable", probe.satisfiable}};
}

Json finding_json(const Finding &finding) {
  Json probes = Json::array();
  for (const auto &probe : finding.probes)
    probes.push_back(probe_json(probe));
  return {{"kind", to_string(finding.kind)},
          {"rule", nonempty(finding.rule)},
          {"variable", nonempty(finding.variable)},
          {"value", nonempty(finding.value)},
          {"range", finding.range ? Json(finding.range->to_string()) : Json(nullptr)},
          {"probes", probes}};
}

std::string probe_text(const std::vector<Probe> &probes) {
  std::string out;
  for (const auto &probe : probes) {
    if (!out.empty())
      out += " | ";
    std::string parts;
    for (const auto &name : probe.rules)
      parts += (parts.empty() ? "" : " and ") + name;
    for (const auto &assumption : probe.assumptions)
      parts += (parts.empty() ? "" : " and ") + ("(" + assumption + ")");
    out += (parts.empty() ? "true" : parts) + (probe.satisfiable ? " => sat" : " => unsat");
  }
  return out;
}

Json report(Json rules, Json entries, Json findings, Json summary) {
  return {{"rules", std::move(rules)},
          {"entries", std::move(entries)},
          {"findings", std::move(findings)},
          {"summary", std::move(summary)}};
}

std::string dump(const Json &json) { return json.dump(2) + "\n"; }

std::string csv(const std::vector<std::vector<std::string>> &rows) {
  std::string out;
  for (const auto &row : rows)
    out += write_csv_row(row);
  return out;
}

std::string findings_csv(const std::vector<Finding> &findings) {
  std::vector<std::vector<std::string>> rows{
      {"kind", "rule", "variable", "value", "range", "probe"}};
  for (const auto &f : findings)
    rows.push_back({std::string(to_string(f.kind)), f.rule, f.variable, f.value,
                    f.range ? f.range->to_string() : "", probe_text(f.probes)});
  return csv(rows);
}

Json skipped_json(const std::vector<SkippedRule> &skipped) {
  Json out = Json::array();
  for (const auto &s : skipped)
    out.push_back({{"rule", s.rule}, {"reason", s.reason}});
  return out;
}

// Commands ------------------------------------------------------------------

struct Outcome {
  int code = kSuccess;
  std::string document;
};

Outcome validate(const Config &config, std::ostream &err) {
  const auto schema = load_schema(config);
  const auto rules = load_rules(config);
  const auto dataset = load_data(config, schema);
  EvalOptions options;
  options.na_policy = config.na_policy == "ignore" ? NaPolicy::Ignore : NaPolicy::Propagate;
  ValidationReport result;
  try {
    result = evaluate_ruleset(rules, dataset, schema, options);
  } catch (const Error &e) {
    throw InputError(config.rules_path + ": " + e.what());
  }

  std::size_t failed = 0, missing = 0, passed = 0;
  for (const auto &entry : result.entries) {
    failed += entry.result == TriBool::False;
    missing += entry.result == TriBool::NA;
    passed += entry.result == TriBool::True;
  }
  Outcome outcome;
  if (failed > 0 || (config.strict_na && missing > 0))
    outcome.code = kValidationFailed;
  if (missing > 0 && !config.strict_na)
    err << "warning: " << missing << " entr" << (missing == 1 ? "y" : "ies")
        << " evaluated to NA\n";

  if (config.format == "csv") {
    std::vector<std::vector<std::string>> rows{{"rule", "table", "unit", "time", "result"}};
    for (const auto &e : result.entries)
      rows.push_back({e.rule, e.scope.table, e.scope.unit.value_or("ALL"),
                      e.scope.time.value_or(""), std::string(to_string(e.result))});
    outcome.document = csv(rows);
    return outcome;
  }

  Json entries = Json::array();
  for (const auto &e : result.entries) {
    Json entry{{"rule", e.rule}};
    entry = scope_json(std::move(entry), e.scope);
    entry["result"] = to_string(e.result);
    entries.push_back(std::move(entry));
  }
  Json per_rule = Json::array();
  for (const auto &s : result.summary)
    per_rule.push_back(
        {{"rule", s.rule}, {"true", s.true_count}, {"false", s.false_count}, {"na", s.na_count}});
  Json diagnostics = Json::array();
  for (const auto &d : result.diagnostics) {
    Json item{{"kind", to_string(d.kind)}, {"rule", d.rule}};
    item = scope_json(std::move(item), d.scope);
    item["message"] = d.message;
    diagnostics.push_back(std::move(item));
  }
  Json summary{{"entries", result.entries.size()},
               {"true", passed},
               {"false", failed},
               {"na", missing},
               {"rules", per_rule},
               {"diagnostics", diagnostics}};
  outcome.document =
      dump(report(rules_json(rules, &schema), entries, Json::array(), std::move(summary)));
  return outcome;
}

Outcome classify(const Config &config) {
  std::optional<Schema> schema;
  if (!config.schema_path.empty())
    schema = load_schema(config);
  const auto rules = load_rules(config);
  const Schema *schema_ptr = schema ? &*schema : nullptr;
  Outcome outcome;
  if (config.format == "csv") {
    std::vector<std::vector<std::string>> rows{{"rule", "signature", "level"}};
    for (const auto &rule : rules) {
      const auto sig = classify_rule(rule, schema_ptr);
      rows.push_back({rule.name, sig.code(), std::to_string(sig.level())});
    }
    outcome.document = csv(rows);
    return outcome;
  }
  std::map<std::string, std::size_t> per_signature;
  std::map<int, std::size_t> per_level;
  for (const auto &rule : rules) {
    const auto sig = classify_rule(rule, schema_ptr);
    ++per_signature[sig.code()];
    ++per_level[sig.level()];
  }
  Json levels = Json::object();
  for (const auto &[level, n] : per_level)
    levels[std::to_string(level)] = n;
  Json summary{{"rules", rules.size()}, {"signatures", per_signature}, {"levels", levels}};
  outcome.document = dump(report(rules_json(rules, schema_ptr), Json::array(), Json::array(),
                                 std::move(summary)));
  return outcome;
}

Outcome emit_findings(const Config &config, const RuleSet &rules, const Schema &schema,
                      const std::vector<Finding> &findings, Json summary) {
  Outcome outcome;
  if (config.format == "csv") {
    outcome.document = findings_csv(findings);
    return outcome;
  }
  Json items = Json::array();
  for (const auto &f : findings)
    items.push_back(finding_json(f));
  outcome.document =
      dump(report(rules_json(rules, &schema), Json::array(), items, std::move(summary)));
  return outcome;
}

Outcome lint(const Config &config) {
  const auto schema = load_schema(config);
  const auto rules = load_rules(config);
  std::vector<Finding> findings;
  std::vector<SkippedRule> skipped;
  for (const auto &rule : rules) {
    try {
      if (auto finding = lint_rule(rule, schema))
        findings.push_back(std::move(*finding));
    } catch (const UnsupportedForAnalysis &e) {
      skipped.push_back({rule.name, e.reason()});
    } catch (const Error &e) {
      throw InputError(config.rules_path + ": " + e.what());
    }
  }
  Json summary{{"findings", findings.size()}, {"skipped", skipped_json(skipped)}};
  return emit_findings(config, rules, schema, findings, std::move(summary));
}

Outcome analyze(const Config &config) {
  const auto schema = load_schema(config);
  const auto rules = load_rules(config);
  AnalysisReport result;
  try {
    result = analyze_ruleset(rules, schema);
  } catch (const Error &e) {
    throw InputError(config.rules_path + ": " + e.what());
  }
  Json summary{{"findings", result.findings.size()},
               {"infeasible", result.infeasible},
               {"skipped", skipped_json(result.skipped)}};
  auto outcome = emit_findings(config, rules, schema, result.findings, std::move(summary));
  outcome.code = result.infeasible ? kInfeasible : kSuccess;
  return outcome;
}

Outcome simplify(const Config &config, std::ostream &err) {
  const auto schema = load_schema(config);
  const auto rules = load_rules(config);
  SimplifyResult result;
  try {
    result = simplify_ruleset(rules, schema);
  } catch (const Error &e) {
    throw InputError(config.rules_path + ": " + e.what());
  }
  Outcome outcome;
  if (result.infeasible) {
    err << "error: the rule set is infeasible: no dataset satisfies all rules\n";
    outcome.code = kInfeasible;
    return outcome;
  }
  outcome.document = format_ruleset(result.rules);

  std::string log;
  if (config.format == "csv") {
    std::vector<std::vector<std::string>> rows{{"kind", "rule", "before", "after", "probe"}};
    for (const auto &step : result.log)
      rows.push_back({std::string(to_string(step.kind)), step.rule, step.before,
                      step.after.value_or(""), probe_text({step.probe})});
    log = csv(rows);
  } else {
    Json steps = Json::array();
    for (const auto &step : result.log)
      steps.push_back({{"kind", to_string(step.kind)},
                       {"rule", step.rule},
                       {"before", step.before},
                       {"after", optional_text(step.after)},
                       {"probe", probe_json(step.probe)}});
    Json summary{{"steps", result.log.size()},
                 {"rules_before", rules.size()},
                 {"rules_after", result.rules.size()}};
    log = dump(report(rules_json(result.rules, &schema), Json::array(), steps,
                      std::move(summary)));
  }
  if (!config.log_path.empty()) {
    std::ofstream file(config.log_path, std::ios::binary);
    if (!file)
      throw InputError(config.log_path + ": cannot write file");
    file << log;
  } else {
    for (const auto &step : result.log)
      err << to_string(step.kind) << ' ' << step.rule << ": " << step.before << " -> "
          << step.after.value_or("(removed)") << '\n';
  }
  return outcome;
}

} // namespace

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
  Config config;
  CLI::App app{"Validate tabular data against rules and analyze rule sets", "validus"};
  app.require_subcommand(1);

  auto add_common = [&](CLI::App *sub, bool schema_required, bool data) {
    sub->add_option("--rules", config.rules_path, "Rule file")->required();
    auto *schema = sub->add_option("--schema", config.schema_path, "Schema file");
    if (schema_required)
      schema->required();
    sub->add_option("--format", config.format, "Report format")
        ->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("-o,--output", config.output_path, "Write the report to FILE");
    if (data) {
      sub->add_option("--data", config.data, "Table data as table=file (repeatable)");
      sub->add_option("--na-policy", config.na_policy, "NA handling in aggregates")
          ->check(CLI::IsMember({"propagate", "ignore"}));
      sub->add_flag("--strict-na", config.strict_na, "Count NA entries as failures");
    }
    if (schema_required) {
      sub->add_option("--unit-column", config.unit_column, "Unit identifier column");
      sub->add_option("--time-column", config.time_column,
                      "Time column, or 'none' for tables without one");
    }
  };
  add_common(app.add_subcommand("validate", "Evaluate rules on data"), true, true);
  add_common(app.add_subcommand("classify", "Print rule signatures and levels"), false, false);
  add_common(app.add_subcommand("lint", "Find tautologies and contradictions"), true, false);
  add_common(app.add_subcommand("analyze", "Analyze a rule set"), true, false);
  auto *simplify_cmd = app.add_subcommand("simplify", "Simplify a rule set");
  add_common(simplify_cmd, true, false);
  simplify_cmd->add_option("--log", config.log_path, "Write the transformation log to FILE");

  std::vector<const char *> argv;
  for (const auto &a : args)
    argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kInputError;
  }
  config.command = app.get_subcommands().front()->get_name();

  Outcome outcome;
  try {
    if (config.command == "validate")
      outcome = validate(config, err);
    else if (config.command == "classify")
      outcome = classify(config);
    else if (config.command == "lint")
      outcome = lint(config);
    else if (config.command == "analyze")
      outcome = analyze(config);
    else
      outcome = simplify(config, err);
  } catch (const InputError &e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const Error &e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }

  if (config.output_path.empty()) {
    out << outcome.document;
  } else {
    std::ofstream file(config.output_path, std::ios::binary);
    if (!file) {
      err << "error: " << config.output_path << ": cannot write file\n";
      return kInputError;
    }
    file << outcome.document;
  }
  return outcome.code;
}

} // namespace validus::cli
