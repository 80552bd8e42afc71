#include "qcav/qasm/emitter.hpp"

#include <sstream>

namespace qcav::qasm {

namespace {

void emit_operand(std::ostream &os, const Operand &op) {
  os << op.reg << '[' << op.index << ']';
}

} // namespace

std::string emit(const QasmAst &ast) {
  std::ostringstream os;
  os << "OPENQASM 2.0;\n";
  for (const RegisterDecl &reg : ast.registers)
    os << (reg.quantum ? "qreg " : "creg ") << reg.name << '[' << reg.size
       << "];\n";
  for (const Statement &stmt : ast.statements) {
    switch (stmt.kind) {
    case StmtKind::MEASURE:
      os << "measure ";
      emit_operand(os, stmt.qubits.front());
      os << " -> ";
      emit_operand(os, *stmt.classical);
      break;
    case StmtKind::DELAY:
      os << "delay(" << *stmt.duration_dt << ") ";
      emit_operand(os, stmt.qubits.front());
      break;
    default:
      os << stmt_name(stmt.kind) << ' ';
      for (std::size_t i = 0; i < stmt.qubits.size(); ++i) {
        if (i > 0)
          os << ',';
        emit_operand(os, stmt.qubits[i]);
      }
      break;
    }
    os << ";\n";
  }
  return os.str();
}

} // namespace qcav::qasm
