#include "qcav/ir/circuit.hpp"

#include <algorithm>

namespace qcav::ir {

const char *kind_name(Kind kind) {
  switch (kind) {
  case Kind::CX:
    return "cx";
  case Kind::X:
    return "x";
  case Kind::Y:
    return "y";
  case Kind::Z:
    return "z";
  case Kind::ID:
    return "id";
  case Kind::H:
    return "h";
  case Kind::CZ:
    return "cz";
  case Kind::BARRIER:
    return "barrier";
  case Kind::MEASURE:
    return "measure";
  case Kind::DELAY:
    return "delay";
  }
  return "?";
}

bool Instruction::touches(int qubit) const {
  return std::find(qubits.begin(), qubits.end(), qubit) != qubits.end();
}

bool structurally_equal(const Circuit &a, const Circuit &b) {
  if (a.qubit_count != b.qubit_count ||
      a.instructions.size() != b.instructions.size())
    return false;
  for (std::size_t i = 0; i < a.instructions.size(); ++i) {
    const Instruction &ia = a.instructions[i];
    const Instruction &ib = b.instructions[i];
    if (ia.kind != ib.kind || ia.qubits != ib.qubits ||
        ia.duration_dt != ib.duration_dt || ia.classical_bit != ib.classical_bit)
      return false;
  }
  return true;
}

Timeline timeline(const Circuit &circuit, const std::vector<int> &qubits) {
  Timeline result;
  for (std::size_t i = 0; i < circuit.instructions.size(); ++i) {
    const Instruction &inst = circuit.instructions[i];
    bool hit = false;
    for (int q : qubits)
      if (inst.touches(q)) {
        hit = true;
        break;
      }
    if (hit)
      result.emplace_back(i, &inst);
  }
  return result;
}

} // namespace qcav::ir
