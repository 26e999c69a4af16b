#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace reebstrip {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Syntax error or unknown identifier in an expression; `offset` is a byte
/// offset into the source text.
class ParseError : public Error {
 public:
  ParseError(const std::string& msg, std::size_t offset)
      : Error(msg + " at byte " + std::to_string(offset)), offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

/// Division by zero, sqrt of a negative number, non-finite result.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Adaptive quadrature failed to reach its tolerance, or a cumint kernel
/// failed the tail-decay probe.
class QuadratureError : public Error {
 public:
  using Error::Error;
};

class SeparationError : public Error {
 public:
  SeparationError(const std::string& msg, double x, double gap)
      : Error(msg), x_(x), gap_(gap) {}
  double x() const { return x_; }
  double gap() const { return gap_; }

 private:
  double x_;
  double gap_;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

class OracleUnreliable : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  ConfigError(const std::string& msg, int line)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + msg : msg), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

}  // namespace reebstrip
