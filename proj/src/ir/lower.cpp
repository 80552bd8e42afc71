#include "qcav/ir/lower.hpp"

#include <map>
#include <string>

namespace qcav::ir {

namespace {

Kind kind_of(qasm::StmtKind kind) {
  using qasm::StmtKind;
  switch (kind) {
  case StmtKind::CX:
    return Kind::CX;
  case StmtKind::X:
    return Kind::X;
  case StmtKind::Y:
    return Kind::Y;
  case StmtKind::Z:
    return Kind::Z;
  case StmtKind::ID:
    return Kind::ID;
  case StmtKind::H:
    return Kind::H;
  case StmtKind::CZ:
    return Kind::CZ;
  case StmtKind::BARRIER:
    return Kind::BARRIER;
  case StmtKind::MEASURE:
    return Kind::MEASURE;
  case StmtKind::DELAY:
    return Kind::DELAY;
  }
  return Kind::ID;
}

} // namespace

Circuit lower(const qasm::QasmAst &ast) {
  std::map<std::string, int> qubit_base;
  std::map<std::string, int> clbit_base;
  int qubits = 0;
  int clbits = 0;
  for (const qasm::RegisterDecl &reg : ast.registers) {
    if (reg.quantum) {
      qubit_base[reg.name] = qubits;
      qubits += reg.size;
    } else {
      clbit_base[reg.name] = clbits;
      clbits += reg.size;
    }
  }

  Circuit circuit;
  circuit.qubit_count = qubits;
  circuit.instructions.reserve(ast.statements.size());
  for (const qasm::Statement &stmt : ast.statements) {
    Instruction inst;
    inst.kind = kind_of(stmt.kind);
    inst.location = stmt.location;
    inst.duration_dt = stmt.duration_dt;
    for (const qasm::Operand &op : stmt.qubits)
      inst.qubits.push_back(qubit_base.at(op.reg) + op.index);
    if (stmt.classical)
      inst.classical_bit = clbit_base.at(stmt.classical->reg) +
                           stmt.classical->index;
    circuit.instructions.push_back(std::move(inst));
  }
  return circuit;
}

} // namespace qcav::ir
