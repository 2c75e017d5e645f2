#pragma once

#include <stdexcept>
#include <string>

namespace ffg {

// Invalid arguments: malformed input, violated preconditions.
class DomainError : public std::invalid_argument {
 public:
  explicit DomainError(const std::string& what) : std::invalid_argument(what) {}
};

// A series is indistinguishable from zero at its known precision.
class PrecisionError : public std::runtime_error {
 public:
  explicit PrecisionError(const std::string& what) : std::runtime_error(what) {}
};

// An internal consistency check failed (nonzero remainder, irrational n_c, ...).
class ConsistencyError : public std::logic_error {
 public:
  explicit ConsistencyError(const std::string& what) : std::logic_error(what) {}
};

}  // namespace ffg
