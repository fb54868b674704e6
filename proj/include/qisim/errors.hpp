#pragma once

#include <stdexcept>
#include <string>

namespace qisim {

// Raised when a quantity is mathematically undefined for the given inputs
// (zero interference slope, unstable numeric derivative, unsatisfiable
// photon-number constraint). Argument and precondition violations use
// std::invalid_argument instead.
struct EvaluationError : std::runtime_error {
  explicit EvaluationError(const std::string& what_arg)
      : std::runtime_error(what_arg) {}
};

}  // namespace qisim
