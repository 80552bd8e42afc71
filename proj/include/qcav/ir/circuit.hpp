#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "qcav/source_location.hpp"

namespace qcav::ir {

// One dt tick of a delay instruction, in nanoseconds. Metadata only: nothing
// in the matching pipeline converts durations to wall time.
inline constexpr double dt_nanoseconds = 2.0 / 5.0;

enum class Kind { CX, X, Y, Z, ID, H, CZ, BARRIER, MEASURE, DELAY };

const char *kind_name(Kind kind);

struct Instruction {
  Kind kind = Kind::ID;
  std::vector<int> qubits; // flat indices; 2 for CX/CZ, >=1 for BARRIER
  std::optional<long long> duration_dt; // present iff kind == DELAY
  // measure only: flat classical bit index, carried along but never inspected
  std::optional<int> classical_bit;
  SourceLocation location;

  bool touches(int qubit) const;
  bool operator==(const Instruction &) const = default;
};

struct Circuit {
  int qubit_count = 0;
  std::vector<Instruction> instructions;

  bool operator==(const Circuit &) const = default;
};

// Equality up to source locations.
bool structurally_equal(const Circuit &a, const Circuit &b);

using Timeline = std::vector<std::pair<std::size_t, const Instruction *>>;

// The subsequence of instructions touching at least one of `qubits`, with
// their global indices, in global order.
Timeline timeline(const Circuit &circuit, const std::vector<int> &qubits);

} // namespace qcav::ir
