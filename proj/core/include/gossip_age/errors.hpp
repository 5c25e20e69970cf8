#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gossip_age {

// Base for every error thrown by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// A constructor or generator received an out-of-domain parameter.
class InvalidParameter : public Error {
public:
  using Error::Error;
};

// An operation's precondition on its arguments was violated.
class InvalidArgument : public Error {
public:
  using Error::Error;
};

// The exact solver hit its configured subset cap.
class ResourceLimit : public Error {
public:
  ResourceLimit(std::size_t cap, std::size_t expanded)
      : Error("subset cap of " + std::to_string(cap) + " exceeded after expanding " +
              std::to_string(expanded) + " subsets"),
        cap_(cap), expanded_(expanded) {}

  std::size_t cap() const { return cap_; }
  std::size_t expanded() const { return expanded_; }

private:
  std::size_t cap_;
  std::size_t expanded_;
};

// Malformed graph-file text. Line and column are 1-based.
class ParseError : public Error {
public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : Error("syntax error at line " + std::to_string(line) + ", column " +
              std::to_string(column) + ": " + what),
        line_(line), column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

private:
  std::size_t line_;
  std::size_t column_;
};

// Well-formed JSON that does not match the graph-file schema.
class SchemaError : public Error {
public:
  using Error::Error;
};

// A network that breaks a GossipNetwork invariant.
class InvariantViolation : public Error {
public:
  using Error::Error;
};

// A network with no events at all (total rate zero).
class DegenerateNetwork : public Error {
public:
  using Error::Error;
};

class IoError : public Error {
public:
  using Error::Error;
};

class InvalidConfig : public Error {
public:
  using Error::Error;
};

// The quantity is undefined for this input, e.g. a residual at an infinite age.
class NotApplicable : public Error {
public:
  using Error::Error;
};

} // namespace gossip_age
