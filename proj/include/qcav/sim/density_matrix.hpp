#pragma once

#include <vector>

#include <Eigen/Dense>

namespace qcav::sim {

// Worst-case physicality drift seen across a simulation, for tests that
// want to assert the numerics stayed honest.
struct InvariantStats {
  double max_trace_error = 0.0;
  double min_eigenvalue = 1.0;
};

// Two-qubit mixed state. Qubit 0 is the most significant bit of the basis
// index, so |11> is index 3. Every mutation re-checks hermiticity, unit
// trace, and positive semidefiniteness (1e-9 slack) and throws
// Error(Internal) on violation.
class DensityMatrix {
public:
  static DensityMatrix ground(); // |00><00|

  void apply_unitary(const Eigen::Matrix4cd &u,
                     InvariantStats *stats = nullptr);
  void apply_kraus(const std::vector<Eigen::Matrix4cd> &ops,
                   InvariantStats *stats = nullptr);

  double probability(int basis_state) const;
  const Eigen::Matrix4cd &matrix() const { return rho_; }

  void validate(InvariantStats *stats = nullptr) const;

private:
  DensityMatrix() = default;
  Eigen::Matrix4cd rho_;
};

} // namespace qcav::sim
