#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "qcav/qasm/ast.hpp"

namespace qcav::gen {

// Attacker pattern families the fixture generator can emit. All but
// CX_CHAIN interleave a delay into every repetition; CX_CHAIN exists to
// demonstrate what gate cancellation does to a bare self-inverse run.
enum class Family {
  CX_CHAIN,
  CX_DELAY,
  DELAY_ONLY,
  X_DELAY,
  Y_DELAY,
  Z_DELAY,
  I_DELAY,
};

const char *family_token(Family family);
std::optional<Family> family_from_token(std::string_view token);

struct FixtureSpec {
  Family family = Family::CX_DELAY;
  int k = 0;                        // repetitions of the attacker unit
  long long delay_dt = 1;           // duration for the delay-bearing units
  std::vector<int> attacker_qubits; // 2 for cx families, 1 otherwise

  bool operator==(const FixtureSpec &) const = default;
};

// Builds a program with the two-qubit search victim on q[0],q[1] and the
// requested attacker unit repeated k times on the given qubits, interleaved
// the way a co-tenant's schedule would be. Measures the victim into c[2].
// Throws Error(FormatError) on bad qubit choices or negative k/delay.
qasm::QasmAst attack_fixture(const FixtureSpec &spec);

} // namespace qcav::gen
