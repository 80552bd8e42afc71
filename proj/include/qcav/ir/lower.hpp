#pragma once

#include "qcav/ir/circuit.hpp"
#include "qcav/qasm/ast.hpp"

namespace qcav::ir {

// Flattens register references to dense qubit indices, quantum registers in
// declaration order. Classical bits are flattened the same way into the
// classical_bit slot of MEASURE instructions.
Circuit lower(const qasm::QasmAst &ast);

} // namespace qcav::ir
