#include "validus/parser.hpp"

#include <cctype>
#include <optional>
#include <vector>

#include "validus/error.hpp"
#include "validus/format.hpp"

namespace validus {

namespace {

enum class Tok {
  Ident,
  Number,
  String,
  LParen,
  RParen,
  LBrace,
  RBrace,
  Comma,
  Colon,
  Dot,
  At,
  Plus,
  Minus,
  Star,
  Slash,
  Lt,
  Le,
  EqEq,
  Ne,
  Ge,
  Gt,
  End,
};

struct Token {
  Tok kind;
  std::string text;
  std::size_t line;
  std::size_t column;
};

class Lexer {
public:
  explicit Lexer(std::string_view text) : text_(text) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skip_blank();
      if (pos_ >= text_.size()) {
        out.push_back({Tok::End, "end of input", line_, column()});
        return out;
      }
      out.push_back(next());
    }
  }

private:
  std::size_t column() const { return pos_ - line_start_ + 1; }

  void skip_blank() {
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n')
          ++pos_;
      } else if (c == '\n') {
        ++pos_;
        ++line_;
        line_start_ = pos_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else {
        return;
      }
    }
  }

  Token next() {
    const auto line = line_;
    const auto col = column();
    const char c = text_[pos_];
    auto single = [&](Tok kind) {
      ++pos_;
      return Token{kind, std::string(1, c), line, col};
    };
    auto pair = [&](char second, Tok two, std::optional<Tok> one) -> Token {
      if (pos_ + 1 < text_.size() && text_[pos_ + 1] == second) {
        pos_ += 2;
        return Token{two, std::string{c, second}, line, col};
      }
      if (!one)
        throw ParseError(line, col, std::string("'") + c + second + "'");
      ++pos_;
      return Token{*one, std::string(1, c), line, col};
    };

    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const auto start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        ++pos_;
      return {Tok::Ident, std::string(text_.substr(start, pos_ - start)), line, col};
    }
    if (std::isdigit(static_cast<unsigned char>(c)))
      return number(line, col);
    if (c == '"')
      return string(line, col);

    switch (c) {
    case '(':
      return single(Tok::LParen);
    case ')':
      return single(Tok::RParen);
    case '{':
      return single(Tok::LBrace);
    case '}':
      return single(Tok::RBrace);
    case ',':
      return single(Tok::Comma);
    case ':':
      return single(Tok::Colon);
    case '.':
      return single(Tok::Dot);
    case '@':
      return single(Tok::At);
    case '+':
      return single(Tok::Plus);
    case '-':
      return single(Tok::Minus);
    case '*':
      return single(Tok::Star);
    case '/':
      return single(Tok::Slash);
    case '<':
      return pair('=', Tok::Le, Tok::Lt);
    case '>':
      return pair('=', Tok::Ge, Tok::Gt);
    case '=':
      return pair('=', Tok::EqEq, std::nullopt);
    case '!':
      return pair('=', Tok::Ne, std::nullopt);
    default:
      throw ParseError(line, col, "a token, found '" + std::string(1, c) + "'");
    }
  }

  Token number(std::size_t line, std::size_t col) {
    const auto start = pos_;
    auto digits = [&] {
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
        ++pos_;
    };
    digits();
    if (pos_ + 1 < text_.size() && text_[pos_] == '.' &&
        std::isdigit(static_cast<unsigned char>(text_[pos_ + 1]))) {
      ++pos_;
      digits();
    }
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      auto look = pos_ + 1;
      if (look < text_.size() && (text_[look] == '+' || text_[look] == '-'))
        ++look;
      if (look < text_.size() && std::isdigit(static_cast<unsigned char>(text_[look]))) {
        pos_ = look;
        digits();
      }
    }
    return {Tok::Number, std::string(text_.substr(start, pos_ - start)), line, col};
  }

  Token string(std::size_t line, std::size_t col) {
    ++pos_;
    std::string out;
    while (pos_ < text_.size() && text_[pos_] != '"') {
      char c = text_[pos_];
      if (c == '\n')
        throw ParseError(line, col, "closing '\"' before end of line");
      if (c == '\\') {
        if (pos_ + 1 >= text_.size())
          break;
        c = text_[++pos_];
        if (c == 'n')
          c = '\n';
        else if (c == 't')
          c = '\t';
      }
      out += c;
      ++pos_;
    }
    if (pos_ >= text_.size())
      throw ParseError(line, col, "closing '\"'");
    ++pos_;
    return {Tok::String, std::move(out), line, col};
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t line_start_ = 0;
};

bool is_keyword(const std::string &word) {
  return word == "if" || word == "and" || word == "or" || word == "not" || word == "NA";
}

std::optional<AggregateFn> aggregate_fn(const std::string &name) {
  if (name == "mean")
    return AggregateFn::Mean;
  if (name == "sum")
    return AggregateFn::Sum;
  if (name == "min")
    return AggregateFn::Min;
  if (name == "max")
    return AggregateFn::Max;
  if (name == "count")
    return AggregateFn::Count;
  return std::nullopt;
}

std::optional<BuiltinFn> builtin_fn(const std::string &name) {
  if (name == "is_number")
    return BuiltinFn::IsNumber;
  if (name == "is_integer")
    return BuiltinFn::IsInteger;
  if (name == "is_text")
    return BuiltinFn::IsText;
  if (name == "is_na")
    return BuiltinFn::IsNA;
  if (name == "in_set")
    return BuiltinFn::InSet;
  return std::nullopt;
}

/// Recursive descent over the token stream, one method per grammar level.
class Parser {
public:
  explicit Parser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  std::vector<Rule> ruleset() {
    std::vector<Rule> rules;
    while (peek().kind != Tok::End) {
      const Token &name = peek();
      if (name.kind != Tok::Ident || is_keyword(name.text))
        fail("rule name");
      advance();
      expect(Tok::Colon, "':' after rule name");
      Rule rule{name.text, expr(), {name.line, name.column}};
      rules.push_back(std::move(rule));
    }
    return rules;
  }

  ExprPtr single_expression() {
    auto e = expr();
    if (peek().kind != Tok::End)
      fail("end of expression");
    return e;
  }

private:
  const Token &peek(std::size_t ahead = 0) const {
    const auto i = std::min(pos_ + ahead, tokens_.size() - 1);
    return tokens_[i];
  }

  const Token &advance() { return tokens_[pos_ < tokens_.size() - 1 ? pos_++ : pos_]; }

  bool at_keyword(const char *word) const {
    return peek().kind == Tok::Ident && peek().text == word;
  }

  bool accept(Tok kind) {
    if (peek().kind != kind)
      return false;
    advance();
    return true;
  }

  const Token &expect(Tok kind, const std::string &what) {
    if (peek().kind != kind)
      fail(what);
    return advance();
  }

  [[noreturn]] void fail(const std::string &expected) const {
    const Token &t = peek();
    throw ParseError(t.line, t.column, expected + ", found '" + t.text + "'");
  }

  ExprPtr expr() {
    if (at_keyword("if")) {
      advance();
      expect(Tok::LParen, "'(' after 'if'");
      auto condition = expr();
      expect(Tok::RParen, "')' closing the condition");
      auto consequent = expr();
      return make_if(std::move(condition), std::move(consequent));
    }
    return or_expr();
  }

  ExprPtr or_expr() {
    auto lhs = and_expr();
    while (at_keyword("or")) {
      advance();
      lhs = make_binary(BinaryOp::Or, std::move(lhs), and_expr());
    }
    return lhs;
  }

  ExprPtr and_expr() {
    auto lhs = not_expr();
    while (at_keyword("and")) {
      advance();
      lhs = make_binary(BinaryOp::And, std::move(lhs), not_expr());
    }
    return lhs;
  }

  ExprPtr not_expr() {
    if (at_keyword("not")) {
      advance();
      return make_unary(UnaryOp::Not, not_expr());
    }
    return cmp();
  }

  ExprPtr cmp() {
    auto lhs = sum();
    std::optional<BinaryOp> op;
    switch (peek().kind) {
    case Tok::Lt:
      op = BinaryOp::Lt;
      break;
    case Tok::Le:
      op = BinaryOp::Le;
      break;
    case Tok::EqEq:
      op = BinaryOp::Eq;
      break;
    case Tok::Ne:
      op = BinaryOp::Ne;
      break;
    case Tok::Ge:
      op = BinaryOp::Ge;
      break;
    case Tok::Gt:
      op = BinaryOp::Gt;
      break;
    default:
      return lhs;
    }
    advance();
    return make_binary(*op, std::move(lhs), sum());
  }

  ExprPtr sum() {
    auto lhs = term();
    while (peek().kind == Tok::Plus || peek().kind == Tok::Minus) {
      const auto op = advance().kind == Tok::Plus ? BinaryOp::Add : BinaryOp::Sub;
      lhs = make_binary(op, std::move(lhs), term());
    }
    return lhs;
  }

  ExprPtr term() {
    auto lhs = factor();
    while (peek().kind == Tok::Star || peek().kind == Tok::Slash) {
      const auto op = advance().kind == Tok::Star ? BinaryOp::Mul : BinaryOp::Div;
      lhs = make_binary(op, std::move(lhs), factor());
    }
    return lhs;
  }

  ExprPtr number_literal(bool negative) {
    const Token &t = advance();
    auto value = parse_decimal(t.text);
    if (!value)
      throw ParseError(t.line, t.column, "decimal number, found '" + t.text + "'");
    return make_number(negative ? Rational(-*value) : *value);
  }

  ExprPtr factor() {
    const Token &t = peek();
    switch (t.kind) {
    case Tok::Number:
      return number_literal(false);
    case Tok::String: {
      auto text = advance().text;
      return make_text(std::move(text));
    }
    case Tok::Minus:
      advance();
      // A sign directly on a number literal is part of the literal.
      if (peek().kind == Tok::Number)
        return number_literal(true);
      return make_unary(UnaryOp::Neg, factor());
    case Tok::LParen: {
      advance();
      auto inner = expr();
      expect(Tok::RParen, "')'");
      return inner;
    }
    case Tok::Ident:
      break;
    default:
      fail("expression");
    }

    if (t.text == "NA") {
      advance();
      return make_na();
    }
    if (is_keyword(t.text))
      fail("expression");
    if (peek(1).kind == Tok::LParen)
      return call();
    return varref();
  }

  ExprPtr call() {
    const Token name = advance();
    advance(); // '('
    if (auto fn = aggregate_fn(name.text)) {
      auto arg = expr();
      expect(Tok::RParen, "')' closing " + name.text);
      return make_aggregate(*fn, std::move(arg));
    }
    if (name.text == "abs") {
      auto arg = expr();
      expect(Tok::RParen, "')' closing abs");
      return make_unary(UnaryOp::Abs, std::move(arg));
    }
    auto fn = builtin_fn(name.text);
    if (!fn)
      throw ParseError(name.line, name.column, "known function, found '" + name.text + "'");
    std::vector<ExprPtr> args;
    args.push_back(expr());
    if (*fn == BuiltinFn::InSet) {
      expect(Tok::Comma, "',' before the member set");
      expect(Tok::LBrace, "'{' opening the member set");
      do
        args.push_back(set_member());
      while (accept(Tok::Comma));
      expect(Tok::RBrace, "'}' closing the member set");
    }
    expect(Tok::RParen, "')' closing " + name.text);
    return make_builtin(*fn, std::move(args));
  }

  ExprPtr set_member() {
    switch (peek().kind) {
    case Tok::String: {
      auto text = advance().text;
      return make_text(std::move(text));
    }
    case Tok::Number:
      return number_literal(false);
    case Tok::Minus:
      advance();
      if (peek().kind != Tok::Number)
        fail("number after '-'");
      return number_literal(true);
    default:
      fail("string or number literal");
    }
  }

  ExprPtr varref() {
    std::optional<std::string> table;
    std::string variable = advance().text;
    if (accept(Tok::Dot)) {
      const Token &second = expect(Tok::Ident, "variable name after '.'");
      if (is_keyword(second.text))
        fail("variable name");
      table = std::move(variable);
      variable = second.text;
    }
    unsigned lag = 0;
    if (accept(Tok::At)) {
      const Token &n = expect(Tok::Number, "lag after '@'");
      auto value = parse_decimal(n.text);
      if (!value || !is_integral(*value) || *value < 0 || *value > 1000000)
        throw ParseError(n.line, n.column, "non-negative integer lag, found '" + n.text + "'");
      lag = static_cast<unsigned>(numerator(*value));
    }
    return make_var(std::move(variable), lag, std::move(table));
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

bool numeric_like(ExprType t) {
  return t == ExprType::Number || t == ExprType::Data || t == ExprType::Missing;
}

bool value_like(ExprType t) { return t != ExprType::Logical; }

bool logical_like(ExprType t) { return t == ExprType::Logical || t == ExprType::Missing; }

class TypeChecker {
public:
  explicit TypeChecker(const std::string &rule) : rule_(rule) {}

  ExprType check(const ExprPtr &expr, bool in_aggregate = false) {
    return std::visit([&](const auto &node) { return visit(node, expr, in_aggregate); },
                      expr->node);
  }

private:
  [[noreturn]] void fail(const ExprPtr &at, const std::string &message) const {
    throw TypeError(rule_, format_expr(at), message);
  }

  ExprType visit(const NumberLit &, const ExprPtr &, bool) { return ExprType::Number; }
  ExprType visit(const TextLit &, const ExprPtr &, bool) { return ExprType::Text; }
  ExprType visit(const NALit &, const ExprPtr &, bool) { return ExprType::Missing; }
  ExprType visit(const VarRef &, const ExprPtr &, bool) { return ExprType::Data; }

  ExprType visit(const Aggregate &node, const ExprPtr &self, bool in_aggregate) {
    if (in_aggregate)
      fail(self, "aggregates cannot be nested");
    const auto arg = check(node.argument, true);
    if (node.fn == AggregateFn::Count ? !value_like(arg) : !numeric_like(arg))
      fail(self, "aggregate argument must be numeric");
    return ExprType::Number;
  }

  ExprType visit(const Unary &node, const ExprPtr &self, bool in_aggregate) {
    const auto operand = check(node.operand, in_aggregate);
    if (node.op == UnaryOp::Not) {
      if (!logical_like(operand))
        fail(self, "'not' needs a logical operand");
      return ExprType::Logical;
    }
    if (!numeric_like(operand))
      fail(self, "arithmetic on a non-numeric operand");
    return ExprType::Number;
  }

  ExprType visit(const Binary &node, const ExprPtr &self, bool in_aggregate) {
    const auto lhs = check(node.lhs, in_aggregate);
    const auto rhs = check(node.rhs, in_aggregate);
    if (is_logical(node.op)) {
      if (!logical_like(lhs) || !logical_like(rhs))
        fail(self, "'" + std::string(to_string(node.op)) + "' needs logical operands");
      return ExprType::Logical;
    }
    if (is_arithmetic(node.op)) {
      if (!numeric_like(lhs) || !numeric_like(rhs))
        fail(self, "arithmetic on a non-numeric operand");
      return ExprType::Number;
    }
    if (!value_like(lhs) || !value_like(rhs))
      fail(self, "comparison of a logical operand");
    const bool text = lhs == ExprType::Text || rhs == ExprType::Text;
    const bool number = lhs == ExprType::Number || rhs == ExprType::Number;
    if (text && number)
      fail(self, "comparison of text with a number");
    if (text && node.op != BinaryOp::Eq && node.op != BinaryOp::Ne)
      fail(self, "text only supports == and !=");
    return ExprType::Logical;
  }

  ExprType visit(const If &node, const ExprPtr &self, bool in_aggregate) {
    if (!logical_like(check(node.condition, in_aggregate)) ||
        !logical_like(check(node.consequent, in_aggregate)))
      fail(self, "'if' needs a logical condition and consequent");
    return ExprType::Logical;
  }

  ExprType visit(const Builtin &node, const ExprPtr &self, bool in_aggregate) {
    if (node.args.empty() || !value_like(check(node.args.front(), in_aggregate)))
      fail(self, std::string(to_string(node.fn)) + " needs a value argument");
    if (node.fn == BuiltinFn::InSet) {
      if (node.args.size() < 2)
        fail(self, "in_set needs at least one member");
      for (std::size_t i = 1; i < node.args.size(); ++i)
        if (!node.args[i]->is<TextLit>() && !node.args[i]->is<NumberLit>())
          fail(self, "in_set members must be literals");
    } else if (node.args.size() != 1) {
      fail(self, std::string(to_string(node.fn)) + " takes one argument");
    }
    return ExprType::Logical;
  }

  const std::string &rule_;
};

} // namespace

ExprType type_check(const ExprPtr &expr, const std::string &rule_name) {
  return TypeChecker(rule_name).check(expr);
}

ExprPtr parse_expression(std::string_view text) {
  return Parser(Lexer(text).run()).single_expression();
}

RuleSet parse_rules(std::string_view text) {
  auto rules = Parser(Lexer(text).run()).ruleset();
  for (const auto &rule : rules)
    if (type_check(rule.body, rule.name) != ExprType::Logical)
      throw TypeError(rule.name, format_expr(rule.body), "rule body must be logical");
  return RuleSet(std::move(rules));
}

} // namespace validus
