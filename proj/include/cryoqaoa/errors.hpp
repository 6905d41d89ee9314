#pragma once

#include <stdexcept>
#include <string>

namespace cryoqaoa {

// Argument has the wrong length for the instance it is used with.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Problem too large for the requested simulation.
class CapacityError : public std::length_error {
 public:
  using std::length_error::length_error;
};

// Malformed problem description (self-loops, bad indices, ...).
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Inconsistent internal bookkeeping, e.g. a counter total missing for a
// nonzero coefficient.
class IntegrityError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Error in a key-value text file; carries the 1-based line when known.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& source, int line, const std::string& what)
      : std::runtime_error(format(source, line, what)), line_(line) {}
  explicit ConfigError(const std::string& what)
      : std::runtime_error(what), line_(0) {}

  int line() const { return line_; }

 private:
  static std::string format(const std::string& source, int line,
                            const std::string& what) {
    std::string out = source;
    if (line > 0) out += ":" + std::to_string(line);
    return out + ": " + what;
  }
  int line_;
};

}  // namespace cryoqaoa
