#pragma once

#include <stdexcept>

namespace rdmono {

/// Invalid user input: bad parameters, malformed scenarios, mismatched meshes.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A structural assumption was violated at runtime, e.g. a graph representation
/// that is not maximal so that a resolvent has no solution.
class InvariantError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace rdmono
