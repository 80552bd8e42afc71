#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qcav/source_location.hpp"

namespace qcav::qasm {

enum class StmtKind { CX, X, Y, Z, ID, H, CZ, BARRIER, MEASURE, DELAY };

const char *stmt_name(StmtKind kind);

struct RegisterDecl {
  std::string name;
  int size = 0;
  bool quantum = true; // qreg vs creg
  SourceLocation location;

  bool operator==(const RegisterDecl &) const = default;
};

// A (register, index) reference, e.g. q[3].
struct Operand {
  std::string reg;
  int index = 0;

  bool operator==(const Operand &) const = default;
};

struct Statement {
  StmtKind kind = StmtKind::X;
  std::vector<Operand> qubits;
  // measure only: the classical bit written, kept so emit can round-trip it
  std::optional<Operand> classical;
  // delay only: duration in dt units, 0 is legal and preserved
  std::optional<long long> duration_dt;
  SourceLocation location;

  bool operator==(const Statement &) const = default;
};

struct QasmAst {
  std::vector<RegisterDecl> registers; // declaration order, qreg and creg mixed
  std::vector<Statement> statements;   // textual order

  bool operator==(const QasmAst &) const = default;
};

// Equality ignoring SourceLocations, the notion the round-trip laws use.
bool structurally_equal(const QasmAst &a, const QasmAst &b);

} // namespace qcav::qasm
