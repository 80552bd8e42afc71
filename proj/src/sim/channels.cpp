#include "qcav/sim/channels.hpp"

#include <cmath>

namespace qcav::sim {

namespace {

// kron of two 2x2s; row/col index = (qubit0 bit)*2 + (qubit1 bit)
Eigen::Matrix4cd kron2(const Eigen::Matrix2cd &a, const Eigen::Matrix2cd &b) {
  Eigen::Matrix4cd out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
  return out;
}

} // namespace

Eigen::Matrix4cd embed_on_qubit(const Eigen::Matrix2cd &op, int qubit) {
  Eigen::Matrix2cd eye = Eigen::Matrix2cd::Identity();
  return qubit == 0 ? kron2(op, eye) : kron2(eye, op);
}

void apply_depolarizing(DensityMatrix &rho, int qubit, double lambda,
                        InvariantStats *stats) {
  const std::complex<double> i1(0.0, 1.0);
  Eigen::Matrix2cd x;
  x << 0, 1, 1, 0;
  Eigen::Matrix2cd y;
  y << 0, -i1, i1, 0;
  Eigen::Matrix2cd z;
  z << 1, 0, 0, -1;
  // (1-l) rho + l I/2 == (1-3l/4) rho + l/4 (XrX + YrY + ZrZ)
  rho.apply_kraus(
      {
          std::sqrt(1.0 - 0.75 * lambda) *
              embed_on_qubit(Eigen::Matrix2cd::Identity(), qubit),
          std::sqrt(lambda / 4.0) * embed_on_qubit(x, qubit),
          std::sqrt(lambda / 4.0) * embed_on_qubit(y, qubit),
          std::sqrt(lambda / 4.0) * embed_on_qubit(z, qubit),
      },
      stats);
}

void apply_amplitude_damping(DensityMatrix &rho, int qubit, double gamma,
                             InvariantStats *stats) {
  Eigen::Matrix2cd k0;
  k0 << 1, 0, 0, std::sqrt(1.0 - gamma);
  Eigen::Matrix2cd k1;
  k1 << 0, std::sqrt(gamma), 0, 0;
  rho.apply_kraus({embed_on_qubit(k0, qubit), embed_on_qubit(k1, qubit)},
                  stats);
}

} // namespace qcav::sim
