#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace synshift {

/// Broad error category; the CLI maps each category to an exit status.
enum class ErrorKind {
  usage,     // bad flags or configuration (exit 1)
  data,      // malformed or inconsistent input data (exit 2)
  endpoint,  // inference endpoint unusable (exit 3)
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// A record in a line-oriented file could not be decoded.
class LoadError : public Error {
 public:
  LoadError(std::size_t line, const std::string& what)
      : Error(ErrorKind::data, "line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// A dependency block or bracketed tree is syntactically invalid.
/// `position` is a 1-based line number for dependency blocks and a 0-based
/// character offset for bracketed trees.
class ParseError : public Error {
 public:
  ParseError(std::size_t position, const std::string& what)
      : Error(ErrorKind::data, what + " (at " + std::to_string(position) + ")"), position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// Well-formed data that breaks a domain invariant (wrong domain, duplicate id, ...).
class ValidationError : public Error {
 public:
  explicit ValidationError(const std::string& what) : Error(ErrorKind::data, what) {}
};

/// A caller broke an operation's precondition.
class ContractError : public Error {
 public:
  explicit ContractError(const std::string& what) : Error(ErrorKind::data, what) {}
};

class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& what) : Error(ErrorKind::usage, what) {}
};

class InsufficientDataError : public Error {
 public:
  explicit InsufficientDataError(const std::string& what) : Error(ErrorKind::data, what) {}
};

class EndpointError : public Error {
 public:
  explicit EndpointError(const std::string& what) : Error(ErrorKind::endpoint, what) {}
};

}  // namespace synshift
