#pragma once

#include <vector>

#include "qisim/gaussian_state.hpp"

namespace qisim {

// One gate of a replayable circuit description. Displace arguments are
// quadrature shifts (dx, dp); squeeze is (r, angle); beamsplit carries the
// transmissivity; phase the rotation angle; amplify the gain; attenuate the
// loss. Both the Gaussian engine and the Fock oracle replay the same list.
struct CircuitOp {
  enum class Kind { Displace, Squeeze, Beamsplit, Phase, Amplify, Attenuate };
  Kind kind = Kind::Displace;
  int mode_a = 0;
  int mode_b = 0;   // second mode for Beamsplit / Amplify / Attenuate
  double arg_a = 0.0;
  double arg_b = 0.0;
};

void apply_circuit(GaussianState& state, const std::vector<CircuitOp>& ops);

}  // namespace qisim
