// One-off parameter search for the shipped NoiseModel defaults.
//
// Finds (lambda_cx, gamma) on a grid such that, with p_base solving the
// 0.87 baseline and lambda_xy = lambda_cx/4:
//   * the cx-delay curve at k=300 lands inside [0.18, 0.22], as close to
//     0.20 as possible,
//   * the curve is monotone non-increasing over k = 0..300,
//   * at k=100 the ordering cx < x < baseline-0.02 holds.
// Writes the winning row and its evidence to data/noise_defaults.txt; the
// constants in src/sim/crosstalk.cpp are frozen to that output.

#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <vector>

#include "qcav/sim/crosstalk.hpp"

using namespace qcav::sim;

namespace {

struct Candidate {
  double lambda_cx = 0.0;
  double gamma = 0.0;
  double p300 = 0.0;
  double cx100 = 0.0;
  double x100 = 0.0;
  bool feasible = false;
};

Candidate evaluate(double p_base, double lambda_cx, double gamma) {
  Candidate c;
  c.lambda_cx = lambda_cx;
  c.gamma = gamma;

  NoiseModel noise;
  noise.p_base = p_base;
  noise.lambda_cx = lambda_cx;
  noise.lambda_xy = lambda_cx / 4.0;
  noise.gamma = gamma;

  double baseline = simulate_victim(noise, AttackSpec{});
  double previous = baseline;
  bool monotone = true;
  for (int k = 1; k <= 300; ++k) {
    double p = simulate_victim(noise, {AttackFamily::CX_DELAY, k, 0});
    if (p > previous + 1e-12)
      monotone = false;
    previous = p;
  }
  c.p300 = previous;
  c.cx100 = simulate_victim(noise, {AttackFamily::CX_DELAY, 100, 0});
  c.x100 = simulate_victim(noise, {AttackFamily::PAULI_X, 100, 0});

  c.feasible = monotone && c.p300 >= 0.18 && c.p300 <= 0.22 &&
               c.cx100 < c.x100 && c.x100 < baseline - 0.02;
  return c;
}

} // namespace

int main(int argc, char **argv) {
  const char *out_path = argc > 1 ? argv[1] : "data/noise_defaults.txt";
  const double target = 0.87;
  double p_base = calibrate_baseline(target);

  std::vector<double> lambdas = {0.005, 0.008, 0.010, 0.012,
                                 0.015, 0.020, 0.030, 0.050};
  std::vector<double> gammas = {0.0005, 0.001, 0.002, 0.004, 0.008};

  std::cout << std::fixed << std::setprecision(6);
  std::cout << "p_base " << p_base << " for baseline " << target << "\n\n";
  std::cout << "lambda_cx  gamma     P(300)    P_cx(100) P_x(100)  ok\n";

  Candidate best;
  bool have_best = false;
  for (double lambda : lambdas)
    for (double gamma : gammas) {
      Candidate c = evaluate(p_base, lambda, gamma);
      std::cout << std::setw(9) << c.lambda_cx << "  " << std::setw(8)
                << c.gamma << "  " << std::setw(8) << c.p300 << "  "
                << std::setw(8) << c.cx100 << "  " << std::setw(8) << c.x100
                << "  " << (c.feasible ? "yes" : "no") << "\n";
      if (!c.feasible)
        continue;
      if (!have_best ||
          std::abs(c.p300 - 0.20) < std::abs(best.p300 - 0.20)) {
        best = c;
        have_best = true;
      }
    }

  if (!have_best) {
    std::cerr << "no feasible cell on the grid\n";
    return 1;
  }

  std::ofstream out(out_path);
  out << std::fixed << std::setprecision(6);
  out << "# shipped noise defaults, produced by tools/qcav_calibrate\n";
  out << "# selection: feasible grid cell with P(300) closest to 0.20\n";
  out << "p_base " << p_base << "\n";
  out << "lambda_cx " << best.lambda_cx << "\n";
  out << "lambda_xy " << best.lambda_cx / 4.0 << "\n";
  out << "gamma " << best.gamma << "\n";
  out << "# evidence\n";
  out << "baseline_k0 " << target << "\n";
  out << "cx_delay_k300 " << best.p300 << "\n";
  out << "cx_delay_k100 " << best.cx100 << "\n";
  out << "x_delay_k100 " << best.x100 << "\n";
  std::cout << "\nselected lambda_cx=" << best.lambda_cx
            << " gamma=" << best.gamma << " -> " << out_path << "\n";
  return 0;
}
