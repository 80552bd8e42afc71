#pragma once

// Seeded random circuit generator for property tests. Biases toward
// repeating the previous gate so that cancellation runs actually occur.

#include <random>
#include <vector>

#include "qcav/ir/circuit.hpp"

namespace qcav::test_support {

struct RandomCircuitOptions {
  int qubit_count = 3;
  int instruction_count = 40;
  bool delays = true;
  bool barriers = false;
  bool measures = false;
  long long max_delay_dt = 4;
  double repeat_bias = 0.35; // chance of duplicating the previous gate
};

inline ir::Circuit random_circuit(std::mt19937_64 &rng,
                                  const RandomCircuitOptions &opt) {
  ir::Circuit circuit;
  circuit.qubit_count = opt.qubit_count;
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::uniform_int_distribution<int> pick_qubit(0, opt.qubit_count - 1);

  std::vector<ir::Kind> kinds = {ir::Kind::X, ir::Kind::Y, ir::Kind::Z,
                                 ir::Kind::H, ir::Kind::ID};
  if (opt.qubit_count >= 2) {
    kinds.push_back(ir::Kind::CX);
    kinds.push_back(ir::Kind::CZ);
  }
  if (opt.delays)
    kinds.push_back(ir::Kind::DELAY);
  if (opt.barriers)
    kinds.push_back(ir::Kind::BARRIER);
  if (opt.measures)
    kinds.push_back(ir::Kind::MEASURE);
  std::uniform_int_distribution<std::size_t> pick_kind(0, kinds.size() - 1);

  for (int i = 0; i < opt.instruction_count; ++i) {
    ir::Instruction inst;
    const bool can_repeat = !circuit.instructions.empty() &&
                            circuit.instructions.back().kind != ir::Kind::BARRIER &&
                            circuit.instructions.back().kind != ir::Kind::MEASURE;
    if (can_repeat && coin(rng) < opt.repeat_bias) {
      inst = circuit.instructions.back();
    } else {
      inst.kind = kinds[pick_kind(rng)];
      switch (inst.kind) {
      case ir::Kind::CX:
      case ir::Kind::CZ: {
        int a = pick_qubit(rng);
        int b = pick_qubit(rng);
        while (b == a)
          b = pick_qubit(rng);
        inst.qubits = {a, b};
        break;
      }
      case ir::Kind::DELAY: {
        std::uniform_int_distribution<long long> pick_dt(0, opt.max_delay_dt);
        inst.qubits = {pick_qubit(rng)};
        inst.duration_dt = pick_dt(rng);
        break;
      }
      case ir::Kind::BARRIER: {
        inst.qubits.clear();
        for (int q = 0; q < opt.qubit_count; ++q)
          if (coin(rng) < 0.5)
            inst.qubits.push_back(q);
        if (inst.qubits.empty())
          inst.qubits.push_back(pick_qubit(rng));
        break;
      }
      case ir::Kind::MEASURE: {
        int q = pick_qubit(rng);
        inst.qubits = {q};
        inst.classical_bit = q;
        break;
      }
      default:
        inst.qubits = {pick_qubit(rng)};
        break;
      }
    }
    inst.location = SourceLocation{i + 1, 1, static_cast<std::size_t>(i) * 8};
    circuit.instructions.push_back(std::move(inst));
  }
  return circuit;
}

} // namespace qcav::test_support
