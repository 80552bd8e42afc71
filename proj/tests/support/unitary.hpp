#pragma once

// Brute-force unitary oracle for small circuits. Only used by tests: builds
// the full 2^n x 2^n matrix, so keep n <= 4. Qubit 0 is the most significant
// bit of the basis index. DELAY, BARRIER, and MEASURE contribute nothing.

#include <complex>
#include <stdexcept>

#include <Eigen/Dense>

#include "qcav/ir/circuit.hpp"

namespace qcav::test_support {

inline Eigen::MatrixXcd circuit_unitary(const ir::Circuit &circuit) {
  const int n = circuit.qubit_count;
  if (n < 1 || n > 4)
    throw std::invalid_argument("circuit_unitary supports 1..4 qubits");
  const long long dim = 1LL << n;
  auto bit_of = [n](long long basis, int qubit) -> int {
    return static_cast<int>((basis >> (n - 1 - qubit)) & 1);
  };
  auto with_bit = [n](long long basis, int qubit, int value) -> long long {
    long long mask = 1LL << (n - 1 - qubit);
    return value ? (basis | mask) : (basis & ~mask);
  };

  Eigen::MatrixXcd total = Eigen::MatrixXcd::Identity(dim, dim);
  const std::complex<double> i1(0.0, 1.0);
  for (const ir::Instruction &inst : circuit.instructions) {
    Eigen::MatrixXcd u;
    switch (inst.kind) {
    case ir::Kind::DELAY:
    case ir::Kind::BARRIER:
    case ir::Kind::MEASURE:
      continue;
    case ir::Kind::CX: {
      int ctrl = inst.qubits[0];
      int tgt = inst.qubits[1];
      u = Eigen::MatrixXcd::Zero(dim, dim);
      for (long long col = 0; col < dim; ++col) {
        long long row = bit_of(col, ctrl)
                            ? with_bit(col, tgt, 1 - bit_of(col, tgt))
                            : col;
        u(row, col) = 1.0;
      }
      break;
    }
    case ir::Kind::CZ: {
      int a = inst.qubits[0];
      int b = inst.qubits[1];
      u = Eigen::MatrixXcd::Zero(dim, dim);
      for (long long col = 0; col < dim; ++col)
        u(col, col) = (bit_of(col, a) && bit_of(col, b)) ? -1.0 : 1.0;
      break;
    }
    default: {
      Eigen::Matrix2cd g;
      switch (inst.kind) {
      case ir::Kind::X:
        g << 0, 1, 1, 0;
        break;
      case ir::Kind::Y:
        g << 0, -i1, i1, 0;
        break;
      case ir::Kind::Z:
        g << 1, 0, 0, -1;
        break;
      case ir::Kind::H:
        g << 1, 1, 1, -1;
        g /= std::sqrt(2.0);
        break;
      default: // ID
        g = Eigen::Matrix2cd::Identity();
        break;
      }
      int q = inst.qubits[0];
      u = Eigen::MatrixXcd::Zero(dim, dim);
      for (long long col = 0; col < dim; ++col) {
        int v = bit_of(col, q);
        for (int w = 0; w < 2; ++w)
          u(with_bit(col, q, w), col) = g(w, v);
      }
      break;
    }
    }
    total = u * total;
  }
  return total;
}

inline bool equal_up_to_global_phase(const Eigen::MatrixXcd &a,
                                     const Eigen::MatrixXcd &b,
                                     double tolerance = 1e-9) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    return false;
  Eigen::Index r = 0;
  Eigen::Index c = 0;
  a.cwiseAbs().maxCoeff(&r, &c);
  if (std::abs(a(r, c)) < tolerance)
    return b.cwiseAbs().maxCoeff() < tolerance;
  std::complex<double> phase = b(r, c) / a(r, c);
  if (std::abs(std::abs(phase) - 1.0) > tolerance)
    return false;
  return (b - phase * a).cwiseAbs().maxCoeff() <= tolerance;
}

} // namespace qcav::test_support
