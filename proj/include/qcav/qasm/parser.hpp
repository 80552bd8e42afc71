#pragma once

#include <string_view>

#include "qcav/qasm/ast.hpp"

namespace qcav::qasm {

// Parses a complete OpenQASM 2.0 program (plus the delay extension) into an
// AST. Rejects the whole file on the first error; never returns a partial
// AST. Throws qcav::Error with kind SyntaxError, UnknownGate, QubitOutOfRange,
// DuplicateRegister or MissingHeader, each carrying a source location.
QasmAst parse(std::string_view source);

} // namespace qcav::qasm
