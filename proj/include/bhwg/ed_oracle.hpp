// ed_oracle.hpp — exact diagonalization of small Bose-Hubbard chains,
// validating the quasiparticle approximations at desk scale.
#pragma once

#include <vector>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include "bhwg/params.hpp"

namespace bhwg {

/// Occupation-number basis of one conserved total-boson sector. States are
/// enumerated in ascending lexicographic order of the occupation vectors
/// (site 0 most significant), so indices are reproducible across runs.
struct FockBasis {
  int n_sites{1};
  int n_max{1};
  int total_n{0};
  std::vector<std::vector<int>> states{};
  int dim{0};
};

/// Enumerates the sector basis. Throws std::invalid_argument outside
/// 1 <= n_sites <= 8, 1 <= n_max <= 4, or 0 <= total_n <= n_sites * n_max.
FockBasis make_fock_basis(int n_sites, int n_max, int total_n);

/// Chain Hamiltonian on the sector basis,
///   omega_c sum_r n_r + (U/2) sum_r n_r (n_r - 1)
///     - J sum_bonds (a_r^dag a_{r+1} + h.c.),
/// with periodic bonds for n_sites >= 3; two sites keep the single bond so
/// hopping is not double counted. J = 0 is legal here (the exactly solvable
/// reference limit). Total boson number is conserved by construction; the
/// dimension guard (2e5) throws std::invalid_argument.
Eigen::SparseMatrix<double> build_hamiltonian(const FockBasis& basis,
                                              const LatticeParams& lp);

/// Smallest eigenvalue of a sector Hamiltonian. Dense solve below dimension
/// 2000; above it a Lanczos iteration with full reorthogonalization and a
/// deterministic start vector (uniform, nonzero overlap with the nodeless
/// ground state).
double ground_energy(const Eigen::SparseMatrix<double>& hamiltonian);

/// Momentum-resolved excitation bands over the integer-filling ground state.
/// Addition energies track the doublon band and removal energies the holon
/// band of the quasiparticle treatment; at J = 0 and filling 1 the removal
/// energy equals the holon band exactly, while for deeper fillings or finite J
/// the two holon conventions differ by 2U(n_bar - 1) plus a k <-> pi - k label
/// flip (the quasiparticle bands treat the Mott state as a true vacuum).
struct ExcitationSpectrum {
  std::vector<double> momenta{};           // k_m = 2 pi m / n_sites
  std::vector<double> doublon_energies{};  // E(N n_bar + 1, k_m) - E_ground
  std::vector<double> holon_energies{};    // E_ground - E(N n_bar - 1, k_m)
  double ground_energy{0.0};               // filling-sector minimum
  int ground_momentum_index{0};            // momentum label of that minimum
  std::vector<Diagnostic> diagnostics{};   // regime warnings, never errors
};

/// Diagonalizes the filling sector N n_bar and both adjacent sectors, resolving
/// momentum through translation-projected blocks (each block dense, fully
/// deterministic). Requires 3 <= n_sites <= 8 so translation labels exist.
/// The occupation cap defaults to n_bar + 2 and may be overridden through
/// n_max (0 keeps the default; the cap must stay in [n_bar + 1, 4]).
/// Regime violations (U outside the Mott validity window, omega_c not above
/// the case-analysis threshold) are reported as warning diagnostics: the
/// diagonalization itself is exact and serves precisely to probe them.
ExcitationSpectrum excitation_spectrum(const LatticeParams& lp, const MiParams& mi,
                                       int n_sites, int n_max = 0);

}  // namespace bhwg
