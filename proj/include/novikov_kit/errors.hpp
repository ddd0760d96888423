#pragma once

#include <stdexcept>
#include <string>

namespace nk {

/// Malformed or invariant-violating input data.
class InputError : public std::runtime_error {
 public:
  explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

/// A call whose arguments fall outside the operation's domain.
class ParameterError : public std::invalid_argument {
 public:
  explicit ParameterError(const std::string& what) : std::invalid_argument(what) {}
};

}  // namespace nk
