#pragma once

#include <stdexcept>
#include <string>

namespace twistbr {

/// Input rejected by a precondition check (bad value, malformed payload,
/// mismatched fields). The CLI maps this to exit code 2.
class InvalidArgument : public std::invalid_argument {
 public:
  explicit InvalidArgument(const std::string& what) : std::invalid_argument(what) {}
};

/// Request is well-formed but outside what the library computes
/// (unsupported geometry/field combination, genus >= 1, ...). Exit code 2.
class Unsupported : public std::runtime_error {
 public:
  explicit Unsupported(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace twistbr
