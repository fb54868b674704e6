#include "qisim/circuit.hpp"

namespace qisim {

void apply_circuit(GaussianState& state, const std::vector<CircuitOp>& ops) {
  for (const auto& op : ops) {
    switch (op.kind) {
      case CircuitOp::Kind::Displace:
        state.displace(op.mode_a, op.arg_a, op.arg_b);
        break;
      case CircuitOp::Kind::Squeeze:
        state.squeeze(op.mode_a, op.arg_a, op.arg_b);
        break;
      case CircuitOp::Kind::Beamsplit:
        state.beamsplit(op.mode_a, op.mode_b, op.arg_a);
        break;
      case CircuitOp::Kind::Phase:
        state.phase_shift(op.mode_a, op.arg_a);
        break;
      case CircuitOp::Kind::Amplify:
        state.amplify(op.mode_a, op.mode_b, op.arg_a);
        break;
      case CircuitOp::Kind::Attenuate:
        state.attenuate(op.mode_a, op.mode_b, op.arg_a);
        break;
    }
  }
}

}  // namespace qisim
