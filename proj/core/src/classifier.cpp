#include "validus/classifier.hpp"

#include <stdexcept>

namespace validus {

bool is_admissible(Span type, Span /*time*/, Span unit, Span variable) noexcept {
  if (type == Span::Multiple)
    return unit == Span::Multiple && variable == Span::Multiple;
  return true;
}

RuleSignature::RuleSignature(Span type, Span time, Span unit, Span variable)
    : type_(type), time_(time), unit_(unit), variable_(variable) {
  if (!is_admissible(type, time, unit, variable))
    throw std::invalid_argument("inadmissible rule signature " + code());
}

std::optional<RuleSignature> RuleSignature::from_code(std::string_view code) {
  if (code.size() != 4)
    return std::nullopt;
  std::array<Span, 4> spans{};
  for (std::size_t i = 0; i < 4; ++i) {
    if (code[i] == 's')
      spans[i] = Span::Single;
    else if (code[i] == 'm')
      spans[i] = Span::Multiple;
    else
      return std::nullopt;
  }
  if (!is_admissible(spans[0], spans[1], spans[2], spans[3]))
    return std::nullopt;
  return RuleSignature(spans[0], spans[1], spans[2], spans[3]);
}

const std::array<RuleSignature, 10> &RuleSignature::all() {
  static const std::array<RuleSignature, 10> signatures = {
      *from_code("ssss"), *from_code("sssm"), *from_code("ssms"), *from_code("smss"),
      *from_code("ssmm"), *from_code("smsm"), *from_code("smms"), *from_code("smmm"),
      *from_code("msmm"), *from_code("mmmm")};
  return signatures;
}

std::string RuleSignature::code() const {
  auto letter = [](Span s) { return s == Span::Single ? 's' : 'm'; };
  return {letter(type_), letter(time_), letter(unit_), letter(variable_)};
}

int RuleSignature::level() const noexcept {
  int n = 0;
  for (Span s : {type_, time_, unit_, variable_})
    n += s == Span::Multiple;
  return n;
}

RuleSignature classify(const SpanReport &span) {
  auto span_of = [](bool multiple) { return multiple ? Span::Multiple : Span::Single; };
  const bool many_tables = span.tables.size() > 1;
  return RuleSignature(span_of(many_tables), span_of(span.max_lag > 0),
                       span_of(span.unit_aggregate || many_tables),
                       span_of(span.variables.size() > 1));
}

RuleSignature classify_rule(const Rule &rule, const Schema *schema) {
  auto span = referenced_signature(rule);
  if (schema && !schema->time_column)
    span.max_lag = 0;
  return classify(span);
}

} // namespace validus
