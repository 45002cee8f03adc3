// sf_bath.hpp — superfluid-phase quasiparticle bands, collective decay, and
// bandgap coherent couplings in closed form.
#pragma once

#include <optional>
#include <utility>

#include "bhwg/params.hpp"

namespace bhwg {

// One Bogoliubov quasiparticle mode of the weakly interacting condensate.
struct SfMode {
  double k{0.0};        // momentum in (-pi, pi]
  double f_k{0.0};      // omega_c + 2 U n_0 + eps_k, with eps_k = -2 J cos k
  double omega_k{0.0};  // sqrt(f_k^2 - U^2 n_0^2)
  double u_k{1.0};      // cosh(alpha_k)
  double v_k{0.0};      // sinh(alpha_k)
  double alpha_k{0.0};  // (1/2) atanh(U n_0 / f_k)
};

// Decomposed bath response at one probe frequency. gamma_sf_response fills the
// decay-side fields (gamma, k_1d, kernel, edge_clamped); delta_sf fills the
// coupling-side fields (delta, plateau, f1, f2, lambda1, lambda2). The exact
// coupling uses signed pole powers; when a pole is negative the f2/lambda2 pair
// describes the magnitude envelope and the sign alternates with separation.
struct SfResponse {
  double gamma{0.0};             // collective decay, >= 0, zero outside the band
  double delta{0.0};             // coherent coupling
  std::optional<double> k_1d{};  // in-band phase momentum in [0, pi]
  double kernel{0.0};            // decay kernel K_SF(omega)
  double plateau{0.0};           // distance-independent term 4 g^2 n_0 / omega
  double f1{0.0};                // residue amplitude tied to the U-only pole
  double f2{0.0};                // residue amplitude tied to the probe-frequency pole
  double lambda1{0.0};           // decay length of the f1 exponential
  double lambda2{0.0};           // decay length of the f2 exponential
  bool edge_clamped{false};      // gamma was evaluated at the clamp offset from a band edge
};

// Full mode data at momentum k. Throws PhysicsError when f_k <= U n_0, where
// the quasiparticle construction has no (finite) solution.
SfMode sf_mode(double k, const LatticeParams& lp, const SfParams& sf);

// omega_k = sqrt(f_k^2 - U^2 n_0^2). Unlike sf_mode this accepts the marginal
// point f_k = U n_0 (a gapless mode); it throws PhysicsError only when
// f_k^2 < U^2 n_0^2 and the frequency would be imaginary.
double dispersion_sf(double k, const LatticeParams& lp, const SfParams& sf);

// (u_k, v_k) with u >= 1, v >= 0. Throws PhysicsError when f_k <= U n_0.
std::pair<double, double> bogoliubov_coeffs_sf(double k, const LatticeParams& lp,
                                               const SfParams& sf);

// (omega_0, omega_pi): the band over which decay is nonzero.
std::pair<double, double> band_edges_sf(const LatticeParams& lp, const SfParams& sf);

// Analytic inversion of the dispersion: the k in (0, pi) whose quasiparticle
// frequency equals omega. Requires omega strictly inside the band.
double k1d_sf(double omega, const LatticeParams& lp, const SfParams& sf);

// Collective decay Gamma_ij(omega) between emitters at sites i and j. Zero
// outside the band. Within 1e-9 J of a band edge the evaluation point is
// clamped to that distance so the band-edge divergence stays finite.
double gamma_sf(int i, int j, double omega, const LatticeParams& lp, const SfParams& sf,
                double g);

// Same evaluation with the kernel, phase momentum, and clamp flag exposed.
SfResponse gamma_sf_response(int i, int j, double omega, const LatticeParams& lp,
                             const SfParams& sf, double g);

// Coherent coupling Delta_ij(omega) from the residue closed form, valid above
// the approximated band top (omega > omega_c + 2 U n_0 + 2 J) or at omega < 0.
// Anywhere else throws PhysicsError: in-band values are principal-value
// integrals and live in the quadrature module.
SfResponse delta_sf(int i, int j, double omega, const LatticeParams& lp,
                    const SfParams& sf, double g);

}  // namespace bhwg
