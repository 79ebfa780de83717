#pragma once

#include <stdexcept>
#include <string>

namespace tractrix {

/// Input violates a documented precondition (bad spec, wrong geometry, open loop...).
class ValidationError : public std::invalid_argument {
 public:
  explicit ValidationError(const std::string& what) : std::invalid_argument(what) {}
};

/// A numerical procedure failed to reach its stated tolerance.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace tractrix
