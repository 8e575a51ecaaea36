#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hyperim {

/// Malformed input text; line is 1-based.
class ParseError : public std::runtime_error {
  public:
    ParseError(std::size_t line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const { return line_; }

  private:
    std::size_t line_;
};

/// A generator spec that cannot be realized (e.g. uniform cardinality > N).
class GenerationError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Instance exceeds a hard resource bound (e.g. brute-force enumeration cap).
class CapacityError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Invalid experiment or optimizer configuration.
class ConfigError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Filesystem failure; message carries the offending path.
class IoError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

} // namespace hyperim
