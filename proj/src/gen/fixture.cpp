#include "qcav/gen/fixture.hpp"

#include <algorithm>
#include <string>

#include "qcav/error.hpp"
#include "qcav/sim/crosstalk.hpp"

namespace qcav::gen {

namespace {

qasm::StmtKind stmt_kind_for(ir::Kind kind) {
  switch (kind) {
  case ir::Kind::CX:
    return qasm::StmtKind::CX;
  case ir::Kind::X:
    return qasm::StmtKind::X;
  case ir::Kind::Y:
    return qasm::StmtKind::Y;
  case ir::Kind::Z:
    return qasm::StmtKind::Z;
  case ir::Kind::ID:
    return qasm::StmtKind::ID;
  case ir::Kind::H:
    return qasm::StmtKind::H;
  case ir::Kind::CZ:
    return qasm::StmtKind::CZ;
  case ir::Kind::BARRIER:
    return qasm::StmtKind::BARRIER;
  case ir::Kind::MEASURE:
    return qasm::StmtKind::MEASURE;
  case ir::Kind::DELAY:
    return qasm::StmtKind::DELAY;
  }
  throw Error(ErrorKind::Internal, "unhandled instruction kind");
}

bool two_qubit_family(Family family) {
  return family == Family::CX_CHAIN || family == Family::CX_DELAY;
}

void validate(const FixtureSpec &spec) {
  if (spec.k < 0)
    throw Error(ErrorKind::FormatError, "repetition count must be >= 0");
  if (spec.delay_dt < 0)
    throw Error(ErrorKind::FormatError, "delay duration must be >= 0");
  std::size_t want = two_qubit_family(spec.family) ? 2 : 1;
  if (spec.attacker_qubits.size() != want)
    throw Error(ErrorKind::FormatError,
                std::string(family_token(spec.family)) + " needs exactly " +
                    std::to_string(want) + " attacker qubit(s), got " +
                    std::to_string(spec.attacker_qubits.size()));
  for (int q : spec.attacker_qubits) {
    if (q < 0)
      throw Error(ErrorKind::FormatError, "attacker qubit index must be >= 0");
    if (q == 0 || q == 1)
      throw Error(ErrorKind::FormatError,
                  "attacker qubits may not overlap the victim on q[0],q[1]");
  }
  if (want == 2 && spec.attacker_qubits[0] == spec.attacker_qubits[1])
    throw Error(ErrorKind::FormatError, "attacker qubits must be distinct");
}

// One repetition of the attacker pattern, as statements on register `q`.
std::vector<qasm::Statement> attacker_unit(const FixtureSpec &spec) {
  const auto &at = spec.attacker_qubits;
  auto op = [](int q) { return qasm::Operand{"q", q}; };
  auto gate = [&](qasm::StmtKind kind,
                  std::vector<qasm::Operand> qubits) {
    qasm::Statement s;
    s.kind = kind;
    s.qubits = std::move(qubits);
    return s;
  };
  auto delay = [&](int q) {
    qasm::Statement s;
    s.kind = qasm::StmtKind::DELAY;
    s.qubits = {op(q)};
    s.duration_dt = spec.delay_dt;
    return s;
  };

  switch (spec.family) {
  case Family::CX_CHAIN:
    return {gate(qasm::StmtKind::CX, {op(at[0]), op(at[1])})};
  case Family::CX_DELAY:
    return {gate(qasm::StmtKind::CX, {op(at[0]), op(at[1])}), delay(at[0])};
  case Family::DELAY_ONLY:
    return {delay(at[0])};
  case Family::X_DELAY:
    return {gate(qasm::StmtKind::X, {op(at[0])}), delay(at[0])};
  case Family::Y_DELAY:
    return {gate(qasm::StmtKind::Y, {op(at[0])}), delay(at[0])};
  case Family::Z_DELAY:
    return {gate(qasm::StmtKind::Z, {op(at[0])}), delay(at[0])};
  case Family::I_DELAY:
    return {gate(qasm::StmtKind::ID, {op(at[0])}), delay(at[0])};
  }
  throw Error(ErrorKind::Internal, "unhandled fixture family");
}

} // namespace

const char *family_token(Family family) {
  switch (family) {
  case Family::CX_CHAIN:
    return "cx-chain";
  case Family::CX_DELAY:
    return "cx-delay";
  case Family::DELAY_ONLY:
    return "delay-only";
  case Family::X_DELAY:
    return "x-delay";
  case Family::Y_DELAY:
    return "y-delay";
  case Family::Z_DELAY:
    return "z-delay";
  case Family::I_DELAY:
    return "i-delay";
  }
  return "?";
}

std::optional<Family> family_from_token(std::string_view token) {
  for (Family f : {Family::CX_CHAIN, Family::CX_DELAY, Family::DELAY_ONLY,
                   Family::X_DELAY, Family::Y_DELAY, Family::Z_DELAY,
                   Family::I_DELAY})
    if (token == family_token(f))
      return f;
  return std::nullopt;
}

qasm::QasmAst attack_fixture(const FixtureSpec &spec) {
  validate(spec);

  // Size the register like the 5-qubit device the scenario models, growing
  // it only when the attacker is placed beyond that.
  int max_attacker =
      *std::max_element(spec.attacker_qubits.begin(), spec.attacker_qubits.end());
  int qubit_count = std::max(5, max_attacker + 1);

  qasm::QasmAst ast;
  ast.registers.push_back({"q", qubit_count, true, {}});
  ast.registers.push_back({"c", 2, false, {}});

  std::vector<qasm::Statement> victim;
  for (const ir::Instruction &inst : sim::grover2_circuit().instructions) {
    qasm::Statement s;
    s.kind = stmt_kind_for(inst.kind);
    for (int q : inst.qubits)
      s.qubits.push_back({"q", q});
    victim.push_back(std::move(s));
  }

  // Interleave one victim gate with one attacker repetition per slot, the
  // way the two programs would share the device schedule; whichever side
  // runs longer finishes on its own.
  std::size_t slots = std::max(victim.size(), static_cast<std::size_t>(spec.k));
  for (std::size_t i = 0; i < slots; ++i) {
    if (i < victim.size())
      ast.statements.push_back(victim[i]);
    if (i < static_cast<std::size_t>(spec.k))
      for (qasm::Statement &s : attacker_unit(spec))
        ast.statements.push_back(std::move(s));
  }

  for (int bit : {0, 1}) {
    qasm::Statement m;
    m.kind = qasm::StmtKind::MEASURE;
    m.qubits = {{"q", bit}};
    m.classical = qasm::Operand{"c", bit};
    ast.statements.push_back(std::move(m));
  }
  return ast;
}

} // namespace qcav::gen
