#pragma once

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "validus/ast.hpp"
#include "validus/dataset.hpp"
#include "validus/rule.hpp"
#include "validus/schema.hpp"
#include "validus/tribool.hpp"
#include "validus/value.hpp"

namespace validus {

/// How aggregates treat NA members: `Propagate` makes the aggregate NA,
/// `Ignore` drops them (an aggregate over nothing is still NA).
enum class NaPolicy { Propagate, Ignore };

struct EvalOptions {
  NaPolicy na_policy = NaPolicy::Propagate;
  bool diagnostics = true;
};

/// Where a rule was evaluated. A missing unit or time means ALL.
struct Scope {
  std::string table;
  std::optional<std::string> unit;
  std::optional<std::string> time;

  friend bool operator==(const Scope &, const Scope &) = default;
};

enum class DiagnosticKind { TypeMismatch, DivisionByZero, UnresolvedReference };

std::string_view to_string(DiagnosticKind kind) noexcept;

struct Diagnostic {
  DiagnosticKind kind;
  std::string rule;
  Scope scope;
  std::string message;

  friend bool operator==(const Diagnostic &, const Diagnostic &) = default;
};

/// Units and occasions present per table, in report order.
class DataIndex {
public:
  explicit DataIndex(const Dataset &dataset);

  struct Table {
    /// Sorted occasions; a table without a time dimension has one absent time.
    std::vector<std::optional<std::string>> times;
    std::map<std::optional<std::string>, std::vector<std::string>> units_at;
  };

  const Dataset &dataset() const noexcept { return *dataset_; }
  const Table *table(const std::string &name) const;

  /// Position of `time` among the table's occasions.
  std::optional<std::size_t> time_position(const std::string &table,
                                           const std::optional<std::string> &time) const;

private:
  const Dataset *dataset_;
  std::map<std::string, Table> tables_;
};

/// Context for evaluating one expression. Unqualified references read
/// variables of `table`; record-level references additionally need `unit`.
/// Aggregates range over all units of their table at `time`.
struct Binding {
  const DataIndex *index = nullptr;
  std::string table;
  std::optional<std::string> unit;
  std::optional<std::string> time;
};

using EvalResult = std::variant<Value, TriBool>;

/// Evaluates an expression: arithmetic over exact rationals, Kleene logic
/// for connectives, NA for missing inputs and for type mismatches.
/// Diagnostics are appended to `diagnostics` when it is non-null and
/// options.diagnostics is set (rule and scope left for the caller to fill).
EvalResult eval_expr(const ExprPtr &expr, const Binding &binding, const EvalOptions &options,
                     std::vector<Diagnostic> *diagnostics = nullptr);

struct ReportEntry {
  std::string rule;
  Scope scope;
  TriBool result;

  friend bool operator==(const ReportEntry &, const ReportEntry &) = default;
};

struct RuleSummary {
  std::string rule;
  std::size_t true_count = 0;
  std::size_t false_count = 0;
  std::size_t na_count = 0;

  friend bool operator==(const RuleSummary &, const RuleSummary &) = default;
};

struct ValidationReport {
  std::vector<ReportEntry> entries;
  std::vector<RuleSummary> summary; // one per rule, rule order
  std::vector<Diagnostic> diagnostics;

  friend bool operator==(const ValidationReport &, const ValidationReport &) = default;
};

/// Applies every rule to the dataset. Record-level rules yield one entry per
/// (unit, time) of their table, rules made only of aggregates one entry per
/// occasion with unit ALL. Entries are ordered by rule, then unit, then time.
/// Throws UnknownVariable and IncompatibleScope.
ValidationReport evaluate_ruleset(const RuleSet &rules, const Dataset &dataset,
                                  const Schema &schema, const EvalOptions &options = {});

} // namespace validus
