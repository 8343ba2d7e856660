#include "validus/schema.hpp"

#include <cctype>

#include "validus/error.hpp"

namespace validus {

std::string_view to_string(VariableKind kind) noexcept {
  switch (kind) {
  case VariableKind::Numeric:
    return "numeric";
  case VariableKind::Integer:
    return "integer";
  case VariableKind::Categorical:
    return "categorical";
  }
  return "numeric";
}

const VariableDecl *Schema::find(const std::string &table,
                                 const std::string &variable) const {
  auto it = tables.find(table);
  if (it == tables.end())
    return nullptr;
  for (const auto &decl : it->second)
    if (decl.name == variable)
      return &decl;
  return nullptr;
}

std::vector<std::string> Schema::tables_with(const std::string &variable) const {
  std::vector<std::string> out;
  for (const auto &[table, decls] : tables)
    for (const auto &decl : decls)
      if (decl.name == variable) {
        out.push_back(table);
        break;
      }
  return out;
}

namespace {

bool is_ident_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}

bool is_ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

/// Cursor over one schema line.
class LineReader {
public:
  LineReader(std::string_view line, std::size_t number) : line_(line), number_(number) {}

  void skip_space() {
    while (pos_ < line_.size() && std::isspace(static_cast<unsigned char>(line_[pos_])))
      ++pos_;
  }

  bool at_end() {
    skip_space();
    return pos_ >= line_.size();
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < line_.size() && line_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c))
      fail(std::string("expected '") + c + "'");
  }

  std::string identifier() {
    skip_space();
    if (pos_ >= line_.size() || !is_ident_start(line_[pos_]))
      fail("expected identifier");
    const auto start = pos_;
    while (pos_ < line_.size() && is_ident_char(line_[pos_]))
      ++pos_;
    return std::string(line_.substr(start, pos_ - start));
  }

  Rational number() {
    skip_space();
    const auto start = pos_;
    while (pos_ < line_.size() &&
           (std::isalnum(static_cast<unsigned char>(line_[pos_])) || line_[pos_] == '.' ||
            line_[pos_] == '-' || line_[pos_] == '+'))
      ++pos_;
    auto value = parse_decimal(line_.substr(start, pos_ - start));
    if (!value)
      fail("expected decimal number");
    return *value;
  }

  /// A categorical level: bare word or double-quoted string.
  std::string level() {
    skip_space();
    if (pos_ < line_.size() && line_[pos_] == '"') {
      ++pos_;
      std::string out;
      while (pos_ < line_.size() && line_[pos_] != '"') {
        if (line_[pos_] == '\\' && pos_ + 1 < line_.size())
          ++pos_;
        out += line_[pos_++];
      }
      if (pos_ >= line_.size())
        fail("unterminated string");
      ++pos_;
      return out;
    }
    const auto start = pos_;
    while (pos_ < line_.size() && line_[pos_] != ',' && line_[pos_] != '}' &&
           !std::isspace(static_cast<unsigned char>(line_[pos_])))
      ++pos_;
    if (start == pos_)
      fail("expected level");
    return std::string(line_.substr(start, pos_ - start));
  }

  [[noreturn]] void fail(const std::string &message) const {
    throw SchemaSyntax(number_, message);
  }

private:
  std::string_view line_;
  std::size_t number_;
  std::size_t pos_ = 0;
};

void parse_directive(LineReader &in, Schema &schema) {
  const auto name = in.identifier();
  const auto column = in.identifier();
  if (!in.at_end())
    in.fail("unexpected text after directive");
  if (name == "unit")
    schema.unit_column = column;
  else if (name == "time")
    schema.time_column = column == "none" ? std::nullopt : std::optional(column);
  else
    in.fail("unknown directive @" + name);
}

} // namespace

Schema parse_schema(std::string_view text) {
  Schema schema;
  std::size_t line_number = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos)
      end = text.size();
    auto line = text.substr(start, end - start);
    start = end + 1;
    ++line_number;

    if (auto hash = line.find('#'); hash != std::string_view::npos)
      line = line.substr(0, hash);
    LineReader in(line, line_number);
    if (in.at_end())
      continue;
    if (in.accept('@')) {
      parse_directive(in, schema);
      continue;
    }

    const auto table = in.identifier();
    in.expect('.');
    VariableDecl decl;
    decl.name = in.identifier();
    in.expect(':');
    const auto kind = in.identifier();
    if (kind == "integer")
      decl.kind = VariableKind::Integer;
    else if (kind == "numeric")
      decl.kind = VariableKind::Numeric;
    else if (kind == "categorical")
      decl.kind = VariableKind::Categorical;
    else
      in.fail("unknown kind '" + kind + "'");

    if (decl.kind == VariableKind::Categorical) {
      in.expect('{');
      if (!in.accept('}')) {
        do {
          auto level = in.level();
          for (const auto &existing : decl.levels)
            if (existing == level)
              in.fail("duplicate level '" + level + "'");
          decl.levels.push_back(std::move(level));
        } while (in.accept(','));
        in.expect('}');
      }
      if (decl.levels.empty())
        in.fail("categorical variable " + decl.name + " needs at least one level");
    } else if (in.accept('[')) {
      Bounds bounds;
      bounds.low = in.number();
      in.expect(',');
      bounds.high = in.number();
      in.expect(']');
      if (bounds.low > bounds.high)
        in.fail("empty bounds for " + decl.name);
      decl.bounds = std::move(bounds);
    }

    if (!in.at_end()) {
      if (in.identifier() != "nullable")
        in.fail("expected 'nullable' or end of line");
      decl.nullable = true;
    }
    if (!in.at_end())
      in.fail("unexpected text at end of declaration");

    auto &decls = schema.tables[table];
    for (const auto &existing : decls)
      if (existing.name == decl.name)
        throw DuplicateVariable(table, decl.name);
    decls.push_back(std::move(decl));
  }
  return schema;
}

TriBool check_domain(const Value &value, const VariableDecl &decl) {
  if (value.is_na())
    return to_tribool(decl.nullable);
  if (value.is_text()) {
    if (decl.kind != VariableKind::Categorical)
      return TriBool::False;
    for (const auto &level : decl.levels)
      if (level == value.text())
        return TriBool::True;
    return TriBool::False;
  }
  if (decl.kind == VariableKind::Categorical)
    return TriBool::False;
  const auto &x = value.number();
  if (decl.kind == VariableKind::Integer && !is_integral(x))
    return TriBool::False;
  if (decl.bounds && (x < decl.bounds->low || x > decl.bounds->high))
    return TriBool::False;
  return TriBool::True;
}

} // namespace validus
