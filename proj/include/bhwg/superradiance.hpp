// superradiance.hpp — burst-criterion evaluation and interaction-strength
// phase maps of collective emission.
#pragma once

#include <vector>

#include "bhwg/params.hpp"

namespace bhwg {

/// The burst inequality evaluated at one parameter point. A burst is predicted
/// when lhs = N_e/2 + sin^2(N_e k d) / (2 N_e sin^2(k d)) strictly exceeds
/// rhs = 2 + Gamma'/Gamma_1D; where sin(k d) vanishes the momentum ratio takes
/// its analytic limit N_e^2.
struct BurstCriterion {
  int n_e{1};               // initially excited emitters
  double k1d_d{0.0};        // phase momentum times lattice constant, in [0, pi]
  double gamma_ratio{0.0};  // Gamma' / Gamma_1D
  double lhs{0.0};
  double rhs{0.0};
  bool burst{false};        // lhs > rhs
};

/// Tri-state map cell value. Cells whose emitter frequency falls outside every
/// quasiparticle band carry no momentum and are neither burst nor no-burst.
enum class BurstCellState { no_burst, burst, undefined };

/// One evaluated map cell. Momentum and decay rate are NaN when undefined.
struct BurstMapCell {
  BurstCellState state{BurstCellState::undefined};
  double k1d{0.0};       // selected phase momentum, units of 1/d
  double gamma_1d{0.0};  // single-emitter decay rate, units of J
  BurstCriterion criterion{};
};

/// Parameters shared by every cell of a burst map. The interaction strength
/// and the emitter number vary along the grid axes; everything else is fixed.
struct BurstMapFixed {
  double omega_e{0.0};      // emitter frequency, units of J
  double omega_c{0.0};      // resonator frequency, units of J
  double filling{1.0};      // n_0 (superfluid) or integer n-bar (Mott)
  double gamma_prime{0.0};  // parasitic decay, units of J
  double g{0.1};            // emitter coupling, units of J
  double J{1.0};            // hopping rate, the energy unit
};

/// Row-major cell grid: cells[iu * ne_grid.size() + in].
struct BurstMap {
  Phase phase{Phase::sf};
  std::vector<double> u_grid{};
  std::vector<int> ne_grid{};
  std::vector<BurstMapCell> cells{};
};

/// Evaluates the burst inequality. Continuous in k1d_d across the removable
/// singularities at 0 and pi, where the momentum ratio equals N_e^2.
BurstCriterion burst_condition(int n_e, double k1d_d, double gamma_ratio);

/// Single-emitter decay rate Gamma_ii(omega_e) of the selected phase. Throws
/// PhysicsError when omega_e lies outside every quasiparticle band, where the
/// decay vanishes and the ratio Gamma'/Gamma_1D is undefined.
double gamma_1d(Phase phase, double omega_e, const LatticeParams& lp,
                const SfParams& sf, const MiParams& mi, double g);

/// Burst phase map over interaction strength and emitter number at fixed
/// frequencies, filling, parasitic decay, and coupling. Out-of-band cells are
/// marked undefined rather than no-burst. In the Mott phase, where both
/// quasiparticle bands can be resonant at once, the cell momentum comes from
/// the band with the larger decay kernel while gamma_1d keeps the full
/// two-band sum.
BurstMap burst_phase_map(Phase phase, const std::vector<double>& u_grid,
                         const std::vector<int>& ne_grid, const BurstMapFixed& fixed);

}  // namespace bhwg
