#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>

#include "validus/rule.hpp"
#include "validus/schema.hpp"

namespace validus {

enum class Span : unsigned char { Single, Multiple };

/// Whether a rule needs one or several values of each key component:
/// unit type, occasion, unit, variable (in that order).
class RuleSignature {
public:
  /// Rejects the six combinations that cannot occur: several types force
  /// several units and several variables. Throws std::invalid_argument.
  RuleSignature(Span type, Span time, Span unit, Span variable);

  /// Parses a four-letter code such as `ssms`.
  static std::optional<RuleSignature> from_code(std::string_view code);

  /// All admissible signatures, ordered by level and then by code.
  static const std::array<RuleSignature, 10> &all();

  Span type_span() const noexcept { return type_; }
  Span time_span() const noexcept { return time_; }
  Span unit_span() const noexcept { return unit_; }
  Span variable_span() const noexcept { return variable_; }

  std::string code() const;
  int level() const noexcept;

  friend bool operator==(const RuleSignature &, const RuleSignature &) = default;

private:
  Span type_, time_, unit_, variable_;
};

/// True for the ten admissible combinations.
bool is_admissible(Span type, Span time, Span unit, Span variable) noexcept;

/// Number of multi-valued components, 0 to 4.
inline int level_of(const RuleSignature &sig) noexcept { return sig.level(); }

/// Syntactic classification from the references a rule contains. With a
/// schema that has no time column every rule is single-occasion.
RuleSignature classify_rule(const Rule &rule, const Schema *schema = nullptr);

RuleSignature classify(const SpanReport &span);

} // namespace validus
