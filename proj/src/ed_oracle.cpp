// ed_oracle.cpp — Fock-sector enumeration, sparse Bose-Hubbard Hamiltonians,
// and translation-projected excitation spectra.

#include "bhwg/ed_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

#include <Eigen/Eigenvalues>

#include "bhwg/errors.hpp"

namespace bhwg {

namespace {

constexpr int max_sites = 8;
constexpr int max_occupation = 4;
constexpr int max_dimension = 200000;
constexpr int dense_threshold = 2000;

void validate_lattice_energies(const LatticeParams& lp) {
  if (!std::isfinite(lp.omega_c) || !std::isfinite(lp.J) || !std::isfinite(lp.U)) {
    throw std::invalid_argument("ed_oracle: lattice parameters must be finite");
  }
  if (!(lp.omega_c > 0.0)) {
    throw std::invalid_argument("ed_oracle: omega_c must be positive");
  }
  if (!(lp.J >= 0.0)) {
    throw std::invalid_argument("ed_oracle: J must be nonnegative");
  }
  if (!(lp.U >= 0.0)) {
    throw std::invalid_argument("ed_oracle: U must be nonnegative");
  }
}

// Occupations packed four bits per site, site 0 in the most significant
// nibble, so ascending keys match ascending lexicographic state order.
std::uint64_t pack_state(const std::vector<int>& state) {
  std::uint64_t key = 0;
  for (int occupation : state) {
    key = (key << 4) | static_cast<std::uint64_t>(occupation);
  }
  return key;
}

// One translation step: site r receives the occupation of site r - 1.
std::vector<int> translate(const std::vector<int>& state) {
  const int n = static_cast<int>(state.size());
  std::vector<int> shifted(n);
  for (int r = 0; r < n; ++r) {
    shifted[r] = state[(r - 1 + n) % n];
  }
  return shifted;
}

int state_index(const std::vector<std::uint64_t>& keys, std::uint64_t key) {
  const auto it = std::lower_bound(keys.begin(), keys.end(), key);
  if (it == keys.end() || *it != key) {
    throw std::logic_error("ed_oracle: hopping left the enumerated sector");
  }
  return static_cast<int>(it - keys.begin());
}

double diagonal_energy(const std::vector<int>& state, const LatticeParams& lp) {
  double energy = 0.0;
  for (int occupation : state) {
    energy += lp.omega_c * occupation +
              0.5 * lp.U * occupation * (occupation - 1);
  }
  return energy;
}

std::vector<std::pair<int, int>> chain_bonds(int n_sites) {
  if (n_sites < 2) {
    return {};
  }
  if (n_sites == 2) {
    return {{0, 1}};
  }
  std::vector<std::pair<int, int>> bonds;
  bonds.reserve(n_sites);
  for (int r = 0; r < n_sites; ++r) {
    bonds.push_back({r, (r + 1) % n_sites});
  }
  return bonds;
}

// All states reachable from one Hamiltonian application, with amplitudes.
// The diagonal term comes first; each hop direction is listed explicitly.
void apply_terms(const std::vector<int>& state, const LatticeParams& lp, int n_max,
                 const std::vector<std::pair<int, int>>& bonds,
                 std::vector<std::pair<std::vector<int>, double>>& out) {
  out.clear();
  out.push_back({state, diagonal_energy(state, lp)});
  if (lp.J == 0.0) {
    return;
  }
  for (const auto& [a, b] : bonds) {
    if (state[b] >= 1 && state[a] + 1 <= n_max) {
      std::vector<int> hopped = state;
      hopped[a] += 1;
      hopped[b] -= 1;
      const double amp = -lp.J * std::sqrt(static_cast<double>(state[b]) *
                                           static_cast<double>(state[a] + 1));
      out.push_back({std::move(hopped), amp});
    }
    if (state[a] >= 1 && state[b] + 1 <= n_max) {
      std::vector<int> hopped = state;
      hopped[b] += 1;
      hopped[a] -= 1;
      const double amp = -lp.J * std::sqrt(static_cast<double>(state[a]) *
                                           static_cast<double>(state[b] + 1));
      out.push_back({std::move(hopped), amp});
    }
  }
}

double lanczos_lowest(const Eigen::SparseMatrix<double>& h) {
  const int dim = static_cast<int>(h.rows());
  const int max_iter = std::min(dim, 400);
  Eigen::MatrixXd krylov(dim, max_iter);
  std::vector<double> alpha;
  std::vector<double> beta;  // beta[m] couples steps m - 1 and m
  alpha.reserve(max_iter);
  beta.reserve(max_iter);
  beta.push_back(0.0);

  Eigen::VectorXd v = Eigen::VectorXd::Constant(dim, 1.0 / std::sqrt(double(dim)));
  double theta = std::numeric_limits<double>::quiet_NaN();
  for (int m = 0; m < max_iter; ++m) {
    krylov.col(m) = v;
    Eigen::VectorXd w = h * v;
    alpha.push_back(v.dot(w));

    // Full reorthogonalization, applied twice for stability.
    const auto span = krylov.leftCols(m + 1);
    w -= span * (span.transpose() * w);
    w -= span * (span.transpose() * w);
    const double norm = w.norm();

    Eigen::MatrixXd tri = Eigen::MatrixXd::Zero(m + 1, m + 1);
    for (int s = 0; s <= m; ++s) {
      tri(s, s) = alpha[s];
      if (s > 0) {
        tri(s, s - 1) = beta[s];
        tri(s - 1, s) = beta[s];
      }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(tri);
    theta = solver.eigenvalues()(0);
    const double residual = norm * std::abs(solver.eigenvectors()(m, 0));
    if (residual <= 1e-10 * std::max(1.0, std::abs(theta)) || norm <= 1e-12) {
      return theta;
    }
    beta.push_back(norm);
    v = w / norm;
  }
  return theta;
}

// Orbit decomposition of a sector under translation. rep_state[s] is the index
// of the lexicographically smallest member of the orbit of s, rep_shift[s] the
// translation count from that representative to s, and orbit_length[s] the
// orbit size (valid at every member).
struct TranslationOrbits {
  std::vector<int> rep_state;
  std::vector<int> rep_shift;
  std::vector<int> orbit_length;
  std::vector<int> representatives;
};

TranslationOrbits find_orbits(const FockBasis& basis,
                              const std::vector<std::uint64_t>& keys) {
  TranslationOrbits orbits;
  orbits.rep_state.assign(basis.dim, -1);
  orbits.rep_shift.assign(basis.dim, 0);
  orbits.orbit_length.assign(basis.dim, 0);
  for (int s = 0; s < basis.dim; ++s) {
    if (orbits.rep_state[s] >= 0) {
      continue;
    }
    // Ascending scan: the first unvisited member is the smallest, so s is the
    // representative of its own orbit.
    std::vector<int> members{s};
    std::vector<int> current = basis.states[s];
    for (;;) {
      current = translate(current);
      const int idx = state_index(keys, pack_state(current));
      if (idx == s) {
        break;
      }
      members.push_back(idx);
    }
    const int length = static_cast<int>(members.size());
    for (int t = 0; t < length; ++t) {
      orbits.rep_state[members[t]] = s;
      orbits.rep_shift[members[t]] = t;
      orbits.orbit_length[members[t]] = length;
    }
    orbits.representatives.push_back(s);
  }
  return orbits;
}

// Lowest eigenvalue in each momentum block of one sector, via translation-
// projected representative states. Empty blocks report +infinity.
std::vector<double> momentum_minima(int n_sites, int n_max, int total_n,
                                    const LatticeParams& lp) {
  const FockBasis basis = make_fock_basis(n_sites, n_max, total_n);
  std::vector<std::uint64_t> keys(basis.dim);
  for (int s = 0; s < basis.dim; ++s) {
    keys[s] = pack_state(basis.states[s]);
  }
  const TranslationOrbits orbits = find_orbits(basis, keys);
  const auto bonds = chain_bonds(n_sites);

  std::vector<double> minima(n_sites, std::numeric_limits<double>::infinity());
  std::vector<std::pair<std::vector<int>, double>> terms;
  for (int m = 0; m < n_sites; ++m) {
    std::vector<int> column_of(basis.dim, -1);
    std::vector<int> block_reps;
    for (int rep : orbits.representatives) {
      if ((m * orbits.orbit_length[rep]) % n_sites == 0) {
        column_of[rep] = static_cast<int>(block_reps.size());
        block_reps.push_back(rep);
      }
    }
    if (block_reps.empty()) {
      continue;
    }

    const double k = 2.0 * M_PI * m / n_sites;
    const std::complex<double> unit(0.0, 1.0);
    Eigen::MatrixXcd block =
        Eigen::MatrixXcd::Zero(block_reps.size(), block_reps.size());
    for (std::size_t col = 0; col < block_reps.size(); ++col) {
      const int rep = block_reps[col];
      apply_terms(basis.states[rep], lp, n_max, bonds, terms);
      for (const auto& [target, amp] : terms) {
        const int idx = state_index(keys, pack_state(target));
        const int target_rep = orbits.rep_state[idx];
        const int row = column_of[target_rep];
        if (row < 0) {
          continue;  // that orbit has no weight at this momentum
        }
        const double ratio = std::sqrt(static_cast<double>(orbits.orbit_length[rep]) /
                                       orbits.orbit_length[target_rep]);
        block(row, col) +=
            amp * ratio * std::exp(-unit * (k * orbits.rep_shift[idx]));
      }
    }

    const double scale = std::max(1.0, block.cwiseAbs().maxCoeff());
    if ((block - block.adjoint()).cwiseAbs().maxCoeff() > 1e-9 * scale) {
      throw std::logic_error("ed_oracle: momentum block lost Hermiticity");
    }
    block = 0.5 * (block + block.adjoint().eval());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(block,
                                                           Eigen::EigenvaluesOnly);
    minima[m] = solver.eigenvalues()(0);
  }
  return minima;
}

}  // namespace

FockBasis make_fock_basis(int n_sites, int n_max, int total_n) {
  if (n_sites < 1 || n_sites > max_sites) {
    throw std::invalid_argument("make_fock_basis: n_sites must lie in [1, 8]");
  }
  if (n_max < 1 || n_max > max_occupation) {
    throw std::invalid_argument("make_fock_basis: n_max must lie in [1, 4]");
  }
  if (total_n < 0 || total_n > n_sites * n_max) {
    throw std::invalid_argument(
        "make_fock_basis: total_n must lie in [0, n_sites * n_max]");
  }

  FockBasis basis;
  basis.n_sites = n_sites;
  basis.n_max = n_max;
  basis.total_n = total_n;

  std::vector<int> state(n_sites, 0);
  // Depth-first enumeration, low occupations first at every site, yields
  // ascending lexicographic order.
  const auto enumerate = [&](auto&& self, int site, int remaining) -> void {
    if (site == n_sites - 1) {
      if (remaining <= n_max) {
        state[site] = remaining;
        basis.states.push_back(state);
      }
      return;
    }
    const int sites_left = n_sites - site - 1;
    const int low = std::max(0, remaining - sites_left * n_max);
    const int high = std::min(n_max, remaining);
    for (int occupation = low; occupation <= high; ++occupation) {
      state[site] = occupation;
      self(self, site + 1, remaining - occupation);
    }
  };
  enumerate(enumerate, 0, total_n);
  basis.dim = static_cast<int>(basis.states.size());
  return basis;
}

Eigen::SparseMatrix<double> build_hamiltonian(const FockBasis& basis,
                                              const LatticeParams& lp) {
  validate_lattice_energies(lp);
  if (basis.dim <= 0 || basis.dim != static_cast<int>(basis.states.size())) {
    throw std::invalid_argument("build_hamiltonian: basis is empty or inconsistent");
  }
  if (basis.dim > max_dimension) {
    throw std::invalid_argument("build_hamiltonian: basis dimension exceeds 2e5");
  }

  std::vector<std::uint64_t> keys(basis.dim);
  for (int s = 0; s < basis.dim; ++s) {
    keys[s] = pack_state(basis.states[s]);
  }
  const auto bonds = chain_bonds(basis.n_sites);

  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(static_cast<std::size_t>(basis.dim) * (1 + 2 * bonds.size()));
  std::vector<std::pair<std::vector<int>, double>> terms;
  for (int s = 0; s < basis.dim; ++s) {
    apply_terms(basis.states[s], lp, basis.n_max, bonds, terms);
    for (const auto& [target, amp] : terms) {
      triplets.emplace_back(state_index(keys, pack_state(target)), s, amp);
    }
  }

  Eigen::SparseMatrix<double> hamiltonian(basis.dim, basis.dim);
  hamiltonian.setFromTriplets(triplets.begin(), triplets.end());
  return hamiltonian;
}

double ground_energy(const Eigen::SparseMatrix<double>& hamiltonian) {
  if (hamiltonian.rows() != hamiltonian.cols() || hamiltonian.rows() == 0) {
    throw std::invalid_argument("ground_energy: matrix must be square and nonempty");
  }
  const int dim = static_cast<int>(hamiltonian.rows());
  if (dim < dense_threshold) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(
        Eigen::MatrixXd(hamiltonian), Eigen::EigenvaluesOnly);
    return solver.eigenvalues()(0);
  }
  return lanczos_lowest(hamiltonian);
}

ExcitationSpectrum excitation_spectrum(const LatticeParams& lp, const MiParams& mi,
                                       int n_sites, int n_max) {
  validate_lattice_energies(lp);
  if (n_sites < 3 || n_sites > max_sites) {
    throw std::invalid_argument(
        "excitation_spectrum: n_sites must lie in [3, 8] for momentum labels");
  }
  if (mi.n_bar < 1) {
    throw std::invalid_argument("excitation_spectrum: n_bar must be at least 1");
  }
  const int cap = (n_max == 0) ? mi.n_bar + 2 : n_max;
  if (cap < mi.n_bar + 1 || cap > max_occupation) {
    throw std::invalid_argument(
        "excitation_spectrum: occupation cap must lie in [n_bar + 1, 4]");
  }

  ExcitationSpectrum out;
  if (lp.J > 0.0) {
    if (lp.omega_c > 2.0 * lp.J) {
      const MiWindow window = validate_mi_regime(lp, mi);
      if (!window.ok) {
        out.diagnostics.push_back(
            {Severity::warning,
             "U outside the Mott validity window: the quasiparticle bands being "
             "probed are not expected to match"});
      }
    } else {
      out.diagnostics.push_back(
          {Severity::warning,
           "omega_c <= 2 J: outside the Mott case analysis; comparison is "
           "exploratory"});
    }
  }

  const int filling_total = n_sites * mi.n_bar;
  const auto ground_minima = momentum_minima(n_sites, cap, filling_total, lp);
  const auto doublon_minima = momentum_minima(n_sites, cap, filling_total + 1, lp);
  const auto holon_minima = momentum_minima(n_sites, cap, filling_total - 1, lp);

  out.ground_energy = ground_minima[0];
  out.ground_momentum_index = 0;
  for (int m = 1; m < n_sites; ++m) {
    if (ground_minima[m] < out.ground_energy) {
      out.ground_energy = ground_minima[m];
      out.ground_momentum_index = m;
    }
  }

  out.momenta.resize(n_sites);
  out.doublon_energies.resize(n_sites);
  out.holon_energies.resize(n_sites);
  for (int m = 0; m < n_sites; ++m) {
    if (!std::isfinite(doublon_minima[m]) || !std::isfinite(holon_minima[m])) {
      throw PhysicsError("excitation_spectrum: empty momentum sector");
    }
    out.momenta[m] = 2.0 * M_PI * m / n_sites;
    out.doublon_energies[m] = doublon_minima[m] - out.ground_energy;
    out.holon_energies[m] = out.ground_energy - holon_minima[m];
  }
  return out;
}

}  // namespace bhwg
