#pragma once

// Violation search: symmetric single-angle scans, see-saw between principal
// eigenvector and settings, and settings optimization at a fixed state.

#include <cstdint>
#include <utility>
#include <vector>

#include "bellforge/quantum_engine.hpp"

namespace bellforge {

// A_1 = cos(phi) Z + sin(phi) X, A_2 = cos(phi) Z - sin(phi) X for each party.
SettingSet settings_from_angles(std::span<const double> phis);

enum class Parametrization {
  Mirror,  // one angle per party (mirror-symmetric XZ pair)
  XZ,      // two independent XZ-plane angles per party
  Bloch,   // two (polar, azimuth) pairs per party
};

int parameters_per_party(Parametrization p);
SettingSet settings_from_parameters(Parametrization p, std::span<const double> params);

// Throws std::logic_error when `value` exceeds the algebraic ceiling.
void assert_below_ceiling(const BellInequality& ineq, double value);

struct ScanConfig {
  int grid_points = 33;   // phi samples on [0, pi/2]
  int refine_iters = 80;  // golden-section steps around the best sample
  double tolerance = 1e-9;
  EigenOptions eigen{};
};

struct ScanResult {
  double phi = 0.0;
  double value = 0.0;
  PureState state;
  std::vector<std::pair<double, double>> samples;  // (phi, value) in evaluation order
};

ScanResult scan_symmetric(const BellInequality& ineq, const ScanConfig& cfg = {});

struct LineSearchConfig {
  int grid_points = 24;  // coarse samples on [0, 2 pi)
  double tolerance = 1e-9;
  int max_sweeps = 200;
  double sweep_eps = 1e-12;
};

struct SeeSawConfig {
  int restarts = 16;
  int max_rounds = 200;
  std::uint64_t seed = 0;
  double convergence_eps = 1e-10;
  Parametrization parametrization = Parametrization::XZ;
  LineSearchConfig line{};
  EigenOptions eigen{.starts = 0};
};

struct SeeSawResult {
  double value = 0.0;
  PureState state;
  SettingSet settings;
  std::vector<double> parameters;
  int best_restart = 0;
  bool budget_exhausted = false;
  // Best value after each round of the winning restart.
  std::vector<double> trajectory;
};

SeeSawResult see_saw(const BellInequality& ineq, const SeeSawConfig& cfg = {});

struct FixedStateResult {
  double value = 0.0;
  SettingSet settings;
  std::vector<double> parameters;
  int sweeps = 0;
};

// Coordinate ascent over setting parameters at a fixed state. Monotone and
// deterministic given `init`.
FixedStateResult fixed_state_optimize(const BellInequality& ineq, const MixedState& rho,
                                      std::span<const double> init,
                                      Parametrization p = Parametrization::XZ,
                                      const LineSearchConfig& cfg = {});

// Best of `restarts` runs from uniform random initial parameters on [0, pi).
FixedStateResult fixed_state_optimize_restarts(const BellInequality& ineq, const MixedState& rho, int restarts,
                                               std::uint64_t seed, Parametrization p = Parametrization::XZ,
                                               const LineSearchConfig& cfg = {});

}  // namespace bellforge
