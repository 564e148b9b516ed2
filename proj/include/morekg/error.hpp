#ifndef MOREKG_ERROR_HPP
#define MOREKG_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace morekg {

// Root of every exception thrown by the library. The CLI maps any Error to
// exit code 1.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A triple that violates the RDF term-position rules.
class InvalidTripleError : public Error {
 public:
  using Error::Error;
};

// A CURIE whose prefix is not registered.
class UnresolvedPrefixError : public Error {
 public:
  explicit UnresolvedPrefixError(const std::string& prefix)
      : Error("unresolved prefix '" + prefix + ":'"), prefix_(prefix) {}
  const std::string& prefix() const { return prefix_; }

 private:
  std::string prefix_;
};

// Syntax error in any of the text formats (N-Triples, Turtle, rules, queries).
// Line and column are 1-based.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t line, std::size_t column)
      : Error("line " + std::to_string(line) + ", column " +
              std::to_string(column) + ": " + message),
        line_(line),
        column_(column) {}
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

// Bad configuration: duplicate registry keys, malformed config or policy
// files.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace morekg

#endif  // MOREKG_ERROR_HPP
