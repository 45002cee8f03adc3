// mi_bath.hpp — Mott-phase doublon/holon bands, fermionic Bogoliubov
// coefficients, collective decay, and bandgap coherent couplings.
#pragma once

#include <complex>
#include <optional>
#include <utility>

#include "bhwg/params.hpp"

namespace bhwg {

// One doublon/holon quasiparticle pair at momentum k. The pairing amplitude is
// purely imaginary and v = i sin(theta/2); v_im stores its imaginary part.
struct MiMode {
  double k{0.0};
  double e_plus{0.0};                    // bare doublon band omega_c + U nbar - 2J(nbar+1) cos k
  double e_minus{0.0};                   // bare holon band omega_c - U(nbar-1) - 2J nbar cos k
  std::complex<double> delta_pair{0.0};  // pairing -2iJ sqrt(nbar(nbar+1)) sin k
  double small_delta{0.0};               // (e_plus - e_minus)/2
  double varsigma{0.0};                  // e_plus + e_minus
  double eta{0.0};                       // (1/2) sqrt(varsigma^2 + 4 |delta_pair|^2)
  double eps_plus{0.0};                  // hybridized doublon band, small_delta + eta
  double eps_minus{0.0};                 // hybridized holon band, -small_delta + eta
  double theta{0.0};                     // mixing angle, tan(theta) = 2 i delta_pair / varsigma
  double u{1.0};                         // cos(theta/2)
  double v_im{0.0};                      // Im v, with v = i sin(theta/2)
};

// The six residue poles of the bandgap coupling with their decay lengths.
// Each (minus, plus) pair multiplies to 1. In the upper gap the interior poles
// are z0_minus (positive) and z1_plus, z2_plus (negative: the exact coupling
// alternates sign with separation, the lengths describe the magnitude).
struct ResiduePoles {
  double z0_minus{0.0}, z0_plus{0.0};  // U-and-omega_c pair, probe-independent
  double z1_minus{0.0}, z1_plus{0.0};  // doublon-like pair, probe-dependent
  double z2_minus{0.0}, z2_plus{0.0};  // holon-like pair, probe-dependent
  double lambda0_minus{0.0};           // 1 / log(1/z0_minus)
  double lambda1_plus{0.0};            // 1 / log(1/|z1_plus|)
  double lambda2_plus{0.0};            // 1 / log(1/|z2_plus|)
};

// Decomposed bath response at one probe frequency. gamma_mi fills the per-band
// decay data; delta_mi fills delta and the residue poles.
struct MiResponse {
  double gamma{0.0};                   // total collective decay across both bands
  double delta{0.0};                   // coherent coupling
  std::optional<double> k_1d_plus{};   // in-band momentum on the doublon band
  std::optional<double> k_1d_minus{};  // in-band momentum on the holon band
  double kernel_plus{0.0};             // decay kernel on the doublon band
  double kernel_minus{0.0};            // decay kernel on the holon band
  int chi_plus{0};                     // 1 when omega lies in the doublon band
  int chi_minus{0};                    // 1 when omega lies in the holon band
  ResiduePoles poles{};
  bool edge_clamped{false};            // decay evaluated at the clamp offset from an edge
};

// Full mode data at momentum k.
MiMode mi_mode(double k, const LatticeParams& lp, const MiParams& mi);

// Hybridized quasiparticle bands eps_{k,sigma} = sigma*delta_k + eta_k.
// sigma = +1 selects the doublon band, -1 the holon band.
double dispersion_mi(double k, int sigma, const LatticeParams& lp, const MiParams& mi);

// (u, Im v) of the fermionic Bogoliubov rotation.
std::pair<double, double> bogoliubov_coeffs_mi(double k, const LatticeParams& lp,
                                               const MiParams& mi);

// Band interval (ascending) of branch sigma: dispersion at k = 0 and k = pi.
std::pair<double, double> band_edges_mi(int sigma, const LatticeParams& lp,
                                        const MiParams& mi);

// Analytic arccos inversion of the hybridized dispersion on branch sigma.
// Requires omega strictly inside that band.
double k1d_mi(double omega, int sigma, const LatticeParams& lp, const MiParams& mi);

// Collective decay: sum over both bands of kernel * cos(k |i-j|), zero in the
// gaps, additive where the bands overlap. Never throws for any real omega;
// evaluations within 1e-9 J of a band edge are clamped to that distance.
MiResponse gamma_mi(int i, int j, double omega, const LatticeParams& lp,
                    const MiParams& mi, double g);

// Upper-bandgap coherent coupling from the residue closed form, in the
// small-hopping approximation (bare bands E_pm, eta = varsigma/2). Requires
// omega above both band tops. In-band frequencies are a hard error; the lower
// gaps are not covered by the closed form and the error message points to the
// quadrature module.
MiResponse delta_mi(int i, int j, double omega, const LatticeParams& lp,
                    const MiParams& mi, double g);

}  // namespace bhwg
