#pragma once

#include <string>

#include "qcav/qasm/ast.hpp"

namespace qcav::qasm {

// Serializes an AST to canonical form: header line, register declarations in
// declaration order, then one statement per line with single spaces and
// lowercase gate names. parse(emit(ast)) is structurally equal to ast.
std::string emit(const QasmAst &ast);

} // namespace qcav::qasm
