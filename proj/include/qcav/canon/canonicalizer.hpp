#pragma once

#include <vector>

#include "qcav/ir/circuit.hpp"

namespace qcav::canon {

// A circuit in transpiler-normal form. Each instruction keeps the
// SourceLocation of the statement it came from, so findings can point back
// at the file. inert[i] marks instructions (front-hoisted delays of qubits
// that do nothing else) the matcher must skip entirely.
struct CanonicalCircuit {
  ir::Circuit circuit;
  std::vector<bool> inert;

  // Treat an arbitrary circuit as already canonical (diagnostic scans of the
  // raw instruction stream). Nothing is inert.
  static CanonicalCircuit assume_canonical(ir::Circuit circuit);

  std::vector<SourceLocation> provenance() const;
};

// Removes maximal even runs of identical self-inverse gates (cx on the same
// ordered pair; cz on the same unordered pair; x, y, z, h on the same qubit)
// that are uninterrupted on their own qubits' timeline, keeping one copy of
// odd runs. Anything else touching a run qubit — a delay of any duration,
// zero included, a barrier, a measurement — breaks the run. id gates are
// dropped outright. Iterated to fixpoint.
ir::Circuit cancel_self_inverse_runs(const ir::Circuit &circuit);

// Merges timeline-consecutive delays on the same qubit into one delay with
// the summed duration, and moves the delays of qubits whose whole timeline
// is delays to the front of the instruction list.
ir::Circuit hoist_pure_delays(const ir::Circuit &circuit);

// cancel_self_inverse_runs then hoist_pure_delays, iterated until the
// circuit stops changing; computes the inert marks last.
CanonicalCircuit canonicalize(const ir::Circuit &circuit);

} // namespace qcav::canon
