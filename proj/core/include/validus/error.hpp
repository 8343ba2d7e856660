#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace validus {

/// Base of every error raised by the library. Carries a stable kind tag so
/// front ends can map errors to exit codes without string matching.
class Error : public std::runtime_error {
public:
  Error(std::string kind, const std::string &message)
      : std::runtime_error(message), kind_(std::move(kind)) {}

  const std::string &kind() const noexcept { return kind_; }

private:
  std::string kind_;
};

// Dataset construction and access.
class DuplicateKey : public Error {
public:
  explicit DuplicateKey(const std::string &key)
      : Error("DuplicateKey", "duplicate key " + key) {}
};

class UnknownKey : public Error {
public:
  explicit UnknownKey(const std::string &key)
      : Error("UnknownKey", "key " + key + " is not declared") {}
};

class MissingKey : public Error {
public:
  explicit MissingKey(const std::string &key)
      : Error("MissingKey", "key " + key + " is not in the key set") {}
};

// Input text errors carry a line (and, for rules, a column).
class SyntaxError : public Error {
public:
  SyntaxError(std::string kind, std::size_t line, std::size_t column,
              const std::string &message)
      : Error(std::move(kind), location(line, column) + ": " + message),
        line_(line), column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

private:
  static std::string location(std::size_t line, std::size_t column) {
    auto out = "line " + std::to_string(line);
    if (column > 0)
      out += ", column " + std::to_string(column);
    return out;
  }

  std::size_t line_;
  std::size_t column_;
};

class SchemaSyntax : public SyntaxError {
public:
  SchemaSyntax(std::size_t line, const std::string &message)
      : SyntaxError("SchemaSyntax", line, 0, message) {}
};

class ParseError : public SyntaxError {
public:
  ParseError(std::size_t line, std::size_t column, const std::string &expected)
      : SyntaxError("ParseError", line, column, "expected " + expected) {}
};

class CsvError : public SyntaxError {
public:
  CsvError(std::size_t line, const std::string &message)
      : SyntaxError("CsvError", line, 0, message) {}
};

class DuplicateVariable : public Error {
public:
  DuplicateVariable(const std::string &table, const std::string &name)
      : Error("DuplicateVariable",
              "variable " + table + "." + name + " declared twice") {}
};

class TypeError : public Error {
public:
  TypeError(const std::string &rule, const std::string &node,
            const std::string &message)
      : Error("TypeError",
              "rule " + rule + ": in '" + node + "': " + message) {}
};

class DuplicateRuleName : public Error {
public:
  explicit DuplicateRuleName(const std::string &name)
      : Error("DuplicateRuleName", "rule name " + name + " used twice") {}
};

class UnknownVariable : public Error {
public:
  UnknownVariable(const std::string &rule, const std::string &name)
      : Error("UnknownVariable",
              "rule " + rule + ": unknown variable " + name) {}
};

class IncompatibleScope : public Error {
public:
  IncompatibleScope(const std::string &rule, const std::string &why)
      : Error("IncompatibleScope", "rule " + rule + ": " + why) {}
};

class UnsupportedForAnalysis : public Error {
public:
  UnsupportedForAnalysis(std::string rule, std::string reason)
      : Error("UnsupportedForAnalysis",
              "rule " + rule + " cannot be analyzed: " + reason),
        rule_(std::move(rule)), reason_(std::move(reason)) {}

  const std::string &rule() const noexcept { return rule_; }
  const std::string &reason() const noexcept { return reason_; }

private:
  std::string rule_;
  std::string reason_;
};

} // namespace validus
