#include "qcav/canon/canonicalizer.hpp"

#include <algorithm>
#include <map>

namespace qcav::canon {

using ir::Circuit;
using ir::Instruction;
using ir::Kind;

namespace {

bool self_inverse_gate(Kind kind) {
  switch (kind) {
  case Kind::CX:
  case Kind::X:
  case Kind::Y:
  case Kind::Z:
  case Kind::H:
  case Kind::CZ:
    return true;
  default:
    return false;
  }
}

// Identical for cancellation purposes. cz is symmetric, so its operand
// order does not matter; cx control/target order does.
bool same_gate(const Instruction &a, const Instruction &b) {
  if (a.kind != b.kind)
    return false;
  if (a.kind == Kind::CZ) {
    auto qa = a.qubits;
    auto qb = b.qubits;
    std::sort(qa.begin(), qa.end());
    std::sort(qb.begin(), qb.end());
    return qa == qb;
  }
  return a.qubits == b.qubits;
}

bool shares_qubit(const Instruction &inst, const std::vector<int> &qubits) {
  for (int q : qubits)
    if (inst.touches(q))
      return true;
  return false;
}

// One left-to-right pass; returns true if anything was removed.
bool cancel_pass(Circuit &circuit) {
  const std::vector<Instruction> &insts = circuit.instructions;
  std::vector<char> remove(insts.size(), 0);
  std::vector<char> consumed(insts.size(), 0);
  bool changed = false;

  for (std::size_t i = 0; i < insts.size(); ++i) {
    if (consumed[i])
      continue;
    if (insts[i].kind == Kind::ID) {
      remove[i] = 1;
      changed = true;
      continue;
    }
    if (!self_inverse_gate(insts[i].kind))
      continue;
    // collect the maximal uninterrupted run starting here
    std::vector<std::size_t> run{i};
    for (std::size_t j = i + 1; j < insts.size(); ++j) {
      if (!shares_qubit(insts[j], insts[i].qubits))
        continue;
      if (!same_gate(insts[j], insts[i]))
        break; // an interrupting instruction on a run qubit
      run.push_back(j);
    }
    for (std::size_t idx : run)
      consumed[idx] = 1;
    if (run.size() < 2)
      continue;
    // even length cancels completely, odd length keeps the first copy
    std::size_t keep_from = (run.size() % 2 == 1) ? 1 : 0;
    for (std::size_t r = keep_from; r < run.size(); ++r)
      remove[run[r]] = 1;
    changed = true;
  }

  if (!changed)
    return false;
  std::vector<Instruction> kept;
  kept.reserve(insts.size());
  for (std::size_t i = 0; i < insts.size(); ++i)
    if (!remove[i])
      kept.push_back(insts[i]);
  circuit.instructions = std::move(kept);
  return true;
}

// Qubits whose entire timeline consists of delays.
std::vector<char> delay_only_qubits(const Circuit &circuit) {
  std::vector<char> pure(static_cast<std::size_t>(circuit.qubit_count), 0);
  std::vector<char> touched(pure.size(), 0);
  for (const Instruction &inst : circuit.instructions)
    for (int q : inst.qubits) {
      touched[static_cast<std::size_t>(q)] = 1;
      if (inst.kind != Kind::DELAY)
        pure[static_cast<std::size_t>(q)] = 2; // disqualified
    }
  for (std::size_t q = 0; q < pure.size(); ++q)
    pure[q] = (touched[q] && pure[q] != 2) ? 1 : 0;
  return pure;
}

} // namespace

Circuit cancel_self_inverse_runs(const Circuit &circuit) {
  Circuit out = circuit;
  while (cancel_pass(out)) {
  }
  return out;
}

Circuit hoist_pure_delays(const Circuit &circuit) {
  Circuit out;
  out.qubit_count = circuit.qubit_count;

  // merge delay runs: a delay folds into the previous delay on its qubit
  // when nothing else touched that qubit in between
  std::vector<Instruction> merged;
  std::map<int, std::size_t> open_delay; // qubit -> index in `merged`
  for (const Instruction &inst : circuit.instructions) {
    if (inst.kind == Kind::DELAY) {
      int q = inst.qubits.front();
      auto it = open_delay.find(q);
      if (it != open_delay.end()) {
        *merged[it->second].duration_dt += *inst.duration_dt;
        continue;
      }
      open_delay[q] = merged.size();
      merged.push_back(inst);
      continue;
    }
    for (int q : inst.qubits)
      open_delay.erase(q);
    merged.push_back(inst);
  }

  std::vector<char> pure = delay_only_qubits(circuit);
  std::vector<Instruction> front;
  std::vector<Instruction> rest;
  for (Instruction &inst : merged) {
    if (inst.kind == Kind::DELAY &&
        pure[static_cast<std::size_t>(inst.qubits.front())])
      front.push_back(std::move(inst));
    else
      rest.push_back(std::move(inst));
  }
  std::stable_sort(front.begin(), front.end(),
                   [](const Instruction &a, const Instruction &b) {
                     return a.qubits.front() < b.qubits.front();
                   });
  out.instructions = std::move(front);
  out.instructions.insert(out.instructions.end(),
                          std::make_move_iterator(rest.begin()),
                          std::make_move_iterator(rest.end()));
  return out;
}

CanonicalCircuit canonicalize(const Circuit &circuit) {
  Circuit current = circuit;
  while (true) {
    Circuit next = hoist_pure_delays(cancel_self_inverse_runs(current));
    if (structurally_equal(next, current))
      break;
    current = std::move(next);
  }

  CanonicalCircuit result;
  std::vector<char> pure = delay_only_qubits(current);
  result.inert.reserve(current.instructions.size());
  for (const Instruction &inst : current.instructions)
    result.inert.push_back(
        inst.kind == Kind::DELAY &&
        pure[static_cast<std::size_t>(inst.qubits.front())]);
  result.circuit = std::move(current);
  return result;
}

CanonicalCircuit CanonicalCircuit::assume_canonical(ir::Circuit circuit) {
  CanonicalCircuit result;
  result.inert.assign(circuit.instructions.size(), false);
  result.circuit = std::move(circuit);
  return result;
}

std::vector<SourceLocation> CanonicalCircuit::provenance() const {
  std::vector<SourceLocation> locations;
  locations.reserve(circuit.instructions.size());
  for (const ir::Instruction &inst : circuit.instructions)
    locations.push_back(inst.location);
  return locations;
}

} // namespace qcav::canon
