#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qcav/canon/canonicalizer.hpp"
#include "qcav/ir/coupling_map.hpp"
#include "qcav/sig/signature.hpp"

namespace qcav::scan {

// One maximal occurrence of a signature: k complete repetitions of its unit
// starting at a concrete instruction under a concrete variable binding.
struct MatchRun {
  std::string signature_id;
  // variable -> qubit, in the signature's variable order
  std::vector<std::pair<std::string, int>> binding;
  std::size_t start_instruction_index = 0; // global index in the circuit
  int k = 0;
  // location of the first instruction of each repetition
  std::vector<SourceLocation> source_locations;

  bool operator==(const MatchRun &) const = default;
};

enum class Verdict { CLEAN, SUSPICIOUS, MALICIOUS };

const char *verdict_name(Verdict verdict);

struct SignatureStats {
  int occurrences = 0;
  int max_k = 0;

  bool operator==(const SignatureStats &) const = default;
};

struct ScanReport {
  std::vector<MatchRun> runs; // sorted by (signature_id, binding, start)
  Verdict verdict = Verdict::CLEAN;
  // every database signature appears, zeroed when it never fired
  std::map<std::string, SignatureStats> per_signature_counts;

  bool operator==(const ScanReport &) const = default;
};

struct ScanOptions {
  // abort with BindingExplosion when a signature would need more bindings
  std::size_t binding_bound = 1'000'000;
};

// Matches every signature under every injective binding of its variables to
// qubits (two-qubit templates restricted to coupling-map edges when a map is
// given). Within the bound qubits' timeline — inert instructions excluded —
// the unit's templates must be realized in order, cyclically; any
// bound-qubit instruction that fails the expected template breaks the run.
// k counts complete repetitions; only maximal runs with k >= 1 are reported.
// Throws BindingExplosion when the binding space exceeds options.
ScanReport scan(const canon::CanonicalCircuit &circuit,
                const sig::SignatureDatabase &db,
                const std::optional<ir::CouplingMap> &coupling = std::nullopt,
                const ScanOptions &options = {});

// Reference matcher: re-walks the timeline for every binding and every start
// index with no shared state or tables. Must produce output identical to
// scan() without a coupling map. Keep circuits small (<= 8 qubits, <= 200
// instructions).
ScanReport brute_force_scan(const canon::CanonicalCircuit &circuit,
                            const sig::SignatureDatabase &db);

} // namespace qcav::scan
