#include "qcav/sim/density_matrix.hpp"

#include <cmath>
#include <sstream>

#include "qcav/error.hpp"

namespace qcav::sim {

namespace {
constexpr double slack = 1e-9;
}

DensityMatrix DensityMatrix::ground() {
  DensityMatrix rho;
  rho.rho_ = Eigen::Matrix4cd::Zero();
  rho.rho_(0, 0) = 1.0;
  return rho;
}

void DensityMatrix::apply_unitary(const Eigen::Matrix4cd &u,
                                  InvariantStats *stats) {
  rho_ = u * rho_ * u.adjoint();
  validate(stats);
}

void DensityMatrix::apply_kraus(const std::vector<Eigen::Matrix4cd> &ops,
                                InvariantStats *stats) {
  Eigen::Matrix4cd next = Eigen::Matrix4cd::Zero();
  for (const Eigen::Matrix4cd &k : ops)
    next += k * rho_ * k.adjoint();
  rho_ = next;
  validate(stats);
}

double DensityMatrix::probability(int basis_state) const {
  return rho_(basis_state, basis_state).real();
}

void DensityMatrix::validate(InvariantStats *stats) const {
  double hermitian_error = (rho_ - rho_.adjoint()).cwiseAbs().maxCoeff();
  double trace_error = std::abs(rho_.trace().real() - 1.0) +
                       std::abs(rho_.trace().imag());
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> eigen(
      ((rho_ + rho_.adjoint()) / 2.0).eval(), Eigen::EigenvaluesOnly);
  double min_eigenvalue = eigen.eigenvalues().minCoeff();

  if (stats) {
    stats->max_trace_error = std::max(stats->max_trace_error, trace_error);
    stats->min_eigenvalue = std::min(stats->min_eigenvalue, min_eigenvalue);
  }
  if (hermitian_error > slack || trace_error > slack ||
      min_eigenvalue < -slack) {
    std::ostringstream what;
    what << "density matrix left the physical set (hermitian error "
         << hermitian_error << ", trace error " << trace_error
         << ", min eigenvalue " << min_eigenvalue << ")";
    throw Error(ErrorKind::Internal, what.str());
  }
}

} // namespace qcav::sim
