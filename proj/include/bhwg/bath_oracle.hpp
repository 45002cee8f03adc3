// bath_oracle.hpp — discrete-momentum time correlators and broadened response quadrature.

#pragma once

#include <complex>

#include "bhwg/params.hpp"

namespace bhwg {

// exact: full quasiparticle dispersions and weights.
// approximated: the dispersions and weights the residue-theorem closed forms
// start from (small-U band for the superfluid, small-J bands for the Mott
// insulator), so closed-form comparisons isolate residue algebra.
enum class DispersionMode { exact, approximated };

/// Input bundle for the numerical ground-truth route: phase, site pair, and
/// the discrete-momentum evaluation controls.
struct CorrelatorSpec {
  Phase phase{Phase::sf};
  LatticeParams lattice{};
  SfParams sf{};          // read when phase == Phase::sf
  MiParams mi{1};         // read when phase == Phase::mi
  int i{0};               // first site index
  int j{0};               // second site index
  double g{0.1};          // emitter-bath coupling, units of J (response only)
  int k_grid_size{4096};  // discrete momentum modes; even, >= 256
  double eta{0.02};       // broadening ladder start, units of J
  DispersionMode dispersion_mode{DispersionMode::exact};
};

/// eta -> 0 extrapolated response at one frequency with ladder error estimates.
struct OracleResponse {
  std::complex<double> i_value{};  // half-Fourier transform I_ij(omega)
  double gamma{0.0};               // I_ij + I_ji^*, units of J
  double delta{0.0};               // (I_ij - I_ji^*) / 2i, units of J
  double gamma_error{0.0};         // |quadratic - linear| extrapolant spread
  double delta_error{0.0};
  bool converged{true};            // error estimates within the requested tolerance
};

/// Two-point displacement correlator <x_i(t) x_j(0)> over the ground state,
/// evaluated as a discrete sum of k_grid_size modes. The superfluid value
/// includes the constant condensate contribution 4 n_0; no coupling factor
/// is applied.
std::complex<double> correlator_xx(const CorrelatorSpec& spec, double t);

/// Half-Fourier response I_ij(omega) with Lorentzian broadening, extrapolated
/// to zero broadening through the ladder (eta, eta/2, eta/4), plus the decay
/// and coherent-coupling combinations Gamma = I_ij + I_ji^* and
/// Delta = (I_ij - I_ji^*) / 2i. Both orderings are summed independently.
/// A positive tolerance marks the result non-converged when either error
/// estimate exceeds it; tolerance 0 disables the check.
OracleResponse response_quadrature(const CorrelatorSpec& spec, double omega,
                                   double tolerance = 0.0);

}  // namespace bhwg
