// params.hpp — parameter containers, unit conventions, and regime validity checks.
#pragma once

#include <string>
#include <vector>

namespace bhwg {

// Photonic lattice parameters. All frequencies are measured in units of the
// hopping rate J; J itself is carried explicitly so formulas stay dimensionful,
// but every default and every figure in the docs takes J = 1.
struct LatticeParams {
  double omega_c{10.0};  // resonator frequency, units of J
  double J{1.0};         // hopping rate, the global energy unit
  double U{0.0};         // on-site repulsion, units of J
  int N_p{512};          // lattice sites used by oracles and discrete sums

  static constexpr double d = 1.0;  // lattice constant, fixed
};

// Superfluid-side parameters.
struct SfParams {
  double n_0{1.0};  // condensate fraction N_0/N_p
};

// Mott-side parameters.
struct MiParams {
  int n_bar{1};  // integer filling factor
};

// Ground-state limit selector for operations defined in both phases.
enum class Phase { sf, mi };

// The emitter ensemble coupled to the lattice.
struct EmitterArray {
  std::vector<int> positions{};  // site indices r_i, strictly increasing
  double omega_e{1.0};           // transition frequency, units of J
  double g{0.1};                 // dipole coupling, units of J
  double gamma_prime{0.0};       // parasitic decay into non-guided modes, units of J
};

// Frequencies rescaled by 2J, the convention all closed-form kernels use.
struct ReducedUnits {
  double w{0.0};      // omega / 2J
  double w_c{0.0};    // omega_c / 2J
  double u_cal{0.0};  // U / 2J
};

ReducedUnits reduced_units(const LatticeParams& lp, double omega);

// A human-readable validity note. Functions returning diagnostics never throw
// for soft regime violations; hard structural violations throw instead.
enum class Severity { warning, error };

struct Diagnostic {
  Severity severity{Severity::warning};
  std::string message{};
};

// Checks structural invariants (throws std::invalid_argument on violation) and
// returns soft warnings, e.g. omega_c below the waveguide's high-frequency
// working assumption.
std::vector<Diagnostic> validate(const LatticeParams& lp);
std::vector<Diagnostic> validate(const LatticeParams& lp, const EmitterArray& em);

// Superfluid regime check. Empty when U is weak (U <= 0.5 J) and the
// quasiparticle construction exists at every momentum, i.e.
// omega_c + eps_k + U n_0 > 0 for all k; otherwise lists what failed.
// Never throws for regime violations.
std::vector<Diagnostic> validate_sf_regime(const LatticeParams& lp, const SfParams& sf);

// The U window inside which the Mott quasiparticle treatment applies.
struct MiWindow {
  double u_min{0.0};  // lower edge, units of J (may be negative: no constraint)
  double u_max{0.0};  // upper edge, units of J (+infinity when unbounded)
  bool ok{false};     // u_min < U < u_max and U >= 2J
};

// Case analysis requiring the doublon band to stay positive. Throws
// PhysicsError when omega_c <= 2J, where the case table does not apply.
MiWindow validate_mi_regime(const LatticeParams& lp, const MiParams& mi);

}  // namespace bhwg
