#pragma once

#include "qcav/sim/density_matrix.hpp"

namespace qcav::sim {

// rho -> (1-lambda) rho + lambda (I/2 (x) tr_q rho): the affected qubit is
// replaced by the maximally mixed state with probability lambda.
void apply_depolarizing(DensityMatrix &rho, int qubit, double lambda,
                        InvariantStats *stats = nullptr);

// Energy relaxation toward |0> with strength gamma.
void apply_amplitude_damping(DensityMatrix &rho, int qubit, double gamma,
                             InvariantStats *stats = nullptr);

// 4x4 embedding of a one-qubit operator on qubit 0 (MSB) or 1.
Eigen::Matrix4cd embed_on_qubit(const Eigen::Matrix2cd &op, int qubit);

} // namespace qcav::sim
