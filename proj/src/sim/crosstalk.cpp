#include "qcav/sim/crosstalk.hpp"

#include <cmath>
#include <iomanip>
#include <sstream>

#include "qcav/error.hpp"
#include "qcav/sim/channels.hpp"

namespace qcav::sim {

namespace {

// one-off search result from tools/qcav_calibrate (data/noise_defaults.txt)
constexpr double default_lambda_cx = 0.015;
constexpr double default_gamma = 0.002;
constexpr double default_lambda_xy = default_lambda_cx / 4.0;

Eigen::Matrix4cd gate_unitary(const ir::Instruction &inst) {
  const std::complex<double> i1(0.0, 1.0);
  switch (inst.kind) {
  case ir::Kind::CZ: {
    Eigen::Matrix4cd u = Eigen::Matrix4cd::Identity();
    u(3, 3) = -1.0;
    return u;
  }
  case ir::Kind::CX: {
    // control = first operand under the MSB-first basis layout
    Eigen::Matrix4cd u = Eigen::Matrix4cd::Zero();
    bool control_msb = inst.qubits[0] == 0;
    for (int basis = 0; basis < 4; ++basis) {
      int control = control_msb ? basis >> 1 : basis & 1;
      int flipped = control ? basis ^ (control_msb ? 1 : 2) : basis;
      u(flipped, basis) = 1.0;
    }
    return u;
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
    default:
      g = Eigen::Matrix2cd::Identity();
      break;
    }
    return embed_on_qubit(g, inst.qubits[0]);
  }
  }
}

void require_probability(double value, const char *name) {
  if (!(value >= 0.0 && value <= 1.0))
    throw Error(ErrorKind::InvalidProbability,
                std::string(name) + " must lie in [0,1]");
}

} // namespace

const char *family_name(AttackFamily family) {
  switch (family) {
  case AttackFamily::CX_DELAY:
    return "cx-delay";
  case AttackFamily::DELAY_ONLY:
    return "delay-only";
  case AttackFamily::PAULI_X:
    return "x-delay";
  case AttackFamily::PAULI_Y:
    return "y-delay";
  case AttackFamily::PAULI_Z:
    return "z-delay";
  case AttackFamily::PAULI_I:
    return "i-delay";
  }
  return "?";
}

ir::Circuit grover2_circuit() {
  ir::Circuit circuit;
  circuit.qubit_count = 2;
  auto add = [&circuit](ir::Kind kind, std::vector<int> qubits) {
    ir::Instruction inst;
    inst.kind = kind;
    inst.qubits = std::move(qubits);
    int i = static_cast<int>(circuit.instructions.size());
    inst.location = SourceLocation{i + 1, 1, static_cast<std::size_t>(i) * 4};
    circuit.instructions.push_back(std::move(inst));
  };
  add(ir::Kind::H, {0});
  add(ir::Kind::H, {1});
  add(ir::Kind::CZ, {0, 1}); // phase-mark |11>
  add(ir::Kind::H, {0});
  add(ir::Kind::H, {1});
  add(ir::Kind::Z, {0});
  add(ir::Kind::Z, {1});
  add(ir::Kind::CZ, {0, 1});
  add(ir::Kind::H, {0});
  add(ir::Kind::H, {1});
  return circuit;
}

double simulate_victim(const NoiseModel &noise, const AttackSpec &attack,
                       InvariantStats *stats) {
  require_probability(noise.p_base, "p_base");
  require_probability(noise.lambda_cx, "lambda_cx");
  require_probability(noise.lambda_xy, "lambda_xy");
  require_probability(noise.gamma, "gamma");
  if (attack.k < 0)
    throw Error(ErrorKind::Internal, "attack repetition count is negative");

  DensityMatrix rho = DensityMatrix::ground();
  for (const ir::Instruction &inst : grover2_circuit().instructions) {
    rho.apply_unitary(gate_unitary(inst), stats);
    for (int q : inst.qubits)
      apply_depolarizing(rho, q, noise.p_base, stats);
  }

  switch (attack.family) {
  case AttackFamily::CX_DELAY:
    for (int i = 0; i < attack.k; ++i)
      for (int q = 0; q < 2; ++q) {
        apply_amplitude_damping(rho, q, noise.gamma, stats);
        apply_depolarizing(rho, q, noise.lambda_cx, stats);
      }
    break;
  case AttackFamily::PAULI_X:
  case AttackFamily::PAULI_Y:
    for (int i = 0; i < attack.k; ++i)
      for (int q = 0; q < 2; ++q)
        apply_depolarizing(rho, q, noise.lambda_xy, stats);
    break;
  case AttackFamily::DELAY_ONLY:
  case AttackFamily::PAULI_Z:
  case AttackFamily::PAULI_I:
    break; // no neighbor effect
  }
  return rho.probability(3);
}

double calibrate_baseline(double target) {
  if (!(target > 0.25 && target <= 1.0))
    throw Error(ErrorKind::Unreachable,
                "baseline target must lie in (0.25, 1.0]");
  auto probe = [](double p_base) {
    NoiseModel noise;
    noise.p_base = p_base;
    return simulate_victim(noise, AttackSpec{});
  };
  constexpr double tolerance = 1e-6;
  if (std::abs(probe(0.0) - target) <= tolerance)
    return 0.0;
  double lo = 0.0; // probe(lo) > target
  double hi = 1.0; // probe(hi) < target
  for (int iter = 0; iter < 200; ++iter) {
    double mid = (lo + hi) / 2.0;
    double value = probe(mid);
    if (std::abs(value - target) <= tolerance)
      return mid;
    (value > target ? lo : hi) = mid;
  }
  throw Error(ErrorKind::Unreachable, "baseline bisection failed to settle");
}

NoiseModel NoiseModel::defaults() {
  static const double calibrated_p_base = calibrate_baseline(0.87);
  NoiseModel noise;
  noise.p_base = calibrated_p_base;
  noise.lambda_cx = default_lambda_cx;
  noise.lambda_xy = default_lambda_xy;
  noise.gamma = default_gamma;
  return noise;
}

std::vector<std::pair<int, double>> sweep_k(const NoiseModel &noise,
                                            AttackFamily family,
                                            long long delay_dt,
                                            const std::vector<int> &k_values) {
  std::vector<std::pair<int, double>> points;
  points.reserve(k_values.size());
  for (int k : k_values)
    points.emplace_back(
        k, simulate_victim(noise, AttackSpec{family, k, delay_dt}));
  return points;
}

std::string format_sweep(const std::vector<std::pair<int, double>> &points) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(6);
  for (const auto &[k, probability] : points)
    os << k << '\t' << probability << '\n';
  return os.str();
}

} // namespace qcav::sim
