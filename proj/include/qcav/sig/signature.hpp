#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "qcav/ir/circuit.hpp"

namespace qcav::sig {

// One slot of a repetition unit. Gate classes name concrete gates except
// PAULI_XY, which matches either x or y. ANY_DELAY matches a delay whose
// qubit equals any of the alternative variables in qubit_vars and whose
// duration satisfies the rule.
enum class TemplateClass {
  CX,
  CZ,
  PAULI_X,
  PAULI_Y,
  PAULI_XY,
  PAULI_Z,
  IDENT,
  H,
  ANY_DELAY,
};

const char *template_class_name(TemplateClass cls);

enum class DurationRule { ANY, EXACT, AT_LEAST };

struct GateTemplate {
  TemplateClass kind_class = TemplateClass::CX;
  // gate classes: operand variables (2 for CX/CZ, 1 otherwise);
  // ANY_DELAY: one or more alternative variables the delay may sit on
  std::vector<std::string> qubit_vars;
  DurationRule duration_rule = DurationRule::ANY; // ANY_DELAY only
  long long duration_dt = 0; // bound for EXACT / AT_LEAST

  bool operator==(const GateTemplate &) const = default;
};

struct Signature {
  std::string id;
  std::vector<GateTemplate> unit; // the repetition unit, matched cyclically
  int suspicious_at = 0;
  int malicious_at = 0;
  std::string severity_note;
  // optional explicit variable tuple; empty means first-appearance order
  std::vector<std::string> declared_vars;

  // The binding tuple order: declared_vars when given, otherwise variables
  // in order of first appearance across the unit.
  std::vector<std::string> variables() const;

  bool operator==(const Signature &) const = default;
};

struct SignatureDatabase {
  std::vector<Signature> signatures;
  std::string version;

  const Signature *find(const std::string &id) const;
  bool operator==(const SignatureDatabase &) const = default;
};

// Text format, one block per signature:
//
//   version builtin-1
//   signature cx-delay
//     unit: CX a b ; DELAY any @ a|b
//     suspicious_at: 5
//     malicious_at: 10
//     note: free text
//   end
//
// Duration specs: `any`, `=N`, `>=N` (dt units). `#` starts a comment.
// Throws FormatError (with line), DuplicateId, BadThresholds, BadArity.
SignatureDatabase load_database(std::string_view source_text);
SignatureDatabase load_database_file(const std::string &path);

std::string emit_database(const SignatureDatabase &db);

// The built-in pair of families the scanner ships with.
SignatureDatabase default_database();

// Whether an instruction kind can realize a template class (duration rules
// are checked separately by the matcher).
bool class_matches_kind(TemplateClass cls, ir::Kind kind);

} // namespace qcav::sig
