#pragma once

#include <stdexcept>
#include <string>

namespace lovx {

// Bad input: malformed arguments, violated preconditions.
struct InvalidArgument : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// A well-formed request that cannot be carried out (size guard, empty
// feasible set, numerical breakdown).
struct ComputationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline void require(bool ok, const std::string& what) {
  if (!ok) throw InvalidArgument(what);
}

}  // namespace lovx
