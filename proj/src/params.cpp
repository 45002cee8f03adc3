// params.cpp — validation and unit helpers for the shared parameter containers.

#include "bhwg/params.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "bhwg/errors.hpp"

namespace bhwg {

namespace {

void check_lattice(const LatticeParams& lp) {
  if (!(lp.J > 0.0)) {
    throw std::invalid_argument("LatticeParams: J must be positive");
  }
  if (!(lp.U >= 0.0)) {
    throw std::invalid_argument("LatticeParams: U must be nonnegative");
  }
  if (!(lp.omega_c > 0.0)) {
    throw std::invalid_argument("LatticeParams: omega_c must be positive");
  }
  if (lp.N_p < 1) {
    throw std::invalid_argument("LatticeParams: N_p must be at least 1");
  }
}

void check_emitters(const LatticeParams& lp, const EmitterArray& em) {
  if (em.positions.empty()) {
    throw std::invalid_argument("EmitterArray: positions must be nonempty");
  }
  for (std::size_t i = 0; i < em.positions.size(); ++i) {
    if (em.positions[i] < 0 || em.positions[i] >= lp.N_p) {
      throw std::invalid_argument("EmitterArray: positions must lie in [0, N_p)");
    }
    if (i > 0 && em.positions[i] <= em.positions[i - 1]) {
      throw std::invalid_argument("EmitterArray: positions must be strictly increasing");
    }
  }
  if (!(em.omega_e > 0.0)) {
    throw std::invalid_argument("EmitterArray: omega_e must be positive");
  }
  if (!(em.g > 0.0)) {
    throw std::invalid_argument("EmitterArray: g must be positive");
  }
  if (!(em.gamma_prime >= 0.0)) {
    throw std::invalid_argument("EmitterArray: gamma_prime must be nonnegative");
  }
}

}  // namespace

ReducedUnits reduced_units(const LatticeParams& lp, double omega) {
  check_lattice(lp);
  const double two_j = 2.0 * lp.J;
  return ReducedUnits{omega / two_j, lp.omega_c / two_j, lp.U / two_j};
}

std::vector<Diagnostic> validate(const LatticeParams& lp) {
  check_lattice(lp);
  std::vector<Diagnostic> notes;
  if (lp.omega_c < 5.0 * lp.J) {
    notes.push_back({Severity::warning,
                     "omega_c < 5 J: the high-frequency working assumption omega_c >> J "
                     "is marginal"});
  }
  return notes;
}

std::vector<Diagnostic> validate(const LatticeParams& lp, const EmitterArray& em) {
  std::vector<Diagnostic> notes = validate(lp);
  check_emitters(lp, em);
  if (em.g > 0.5 * lp.J) {
    notes.push_back({Severity::warning,
                     "g > 0.5 J: weak-coupling (Born-Markov) treatment is unreliable"});
  }
  return notes;
}

std::vector<Diagnostic> validate_sf_regime(const LatticeParams& lp, const SfParams& sf) {
  check_lattice(lp);
  if (!(sf.n_0 > 0.0)) {
    throw std::invalid_argument("SfParams: n_0 must be positive");
  }
  std::vector<Diagnostic> notes;
  if (lp.U > 0.5 * lp.J) {
    notes.push_back({Severity::warning,
                     "U > 0.5 J: outside the weak-interaction superfluid window"});
  }
  // The quasiparticle construction exists iff f_k > U n_0 at every quasiparticle
  // momentum. k = 0 is the condensate mode, not a quasiparticle, so on the N_p
  // grid the worst case is the smallest nonzero momentum 2 pi / N_p, where
  // f_k - U n_0 = omega_c + U n_0 - 2 J cos(2 pi / N_p).
  const double margin =
      lp.omega_c + lp.U * sf.n_0 - 2.0 * lp.J * std::cos(2.0 * M_PI / lp.N_p);
  if (!(margin > 0.0)) {
    notes.push_back({Severity::error,
                     "quasiparticle construction fails near k = 0: "
                     "omega_c + eps_k + U n_0 reaches a nonpositive value"});
  }
  return notes;
}

MiWindow validate_mi_regime(const LatticeParams& lp, const MiParams& mi) {
  check_lattice(lp);
  if (mi.n_bar < 1) {
    throw std::invalid_argument("MiParams: n_bar must be at least 1");
  }
  const double J = lp.J;
  const double wc = lp.omega_c;
  if (!(wc > 2.0 * J)) {
    throw PhysicsError(
        "validate_mi_regime: omega_c <= 2J is outside the validity case analysis");
  }
  MiWindow win;
  if (mi.n_bar == 1) {
    win.u_min = (wc < 4.0 * J) ? 4.0 * J - wc : 0.0;
    win.u_max = std::numeric_limits<double>::infinity();
  } else {
    const double lo = 2.0 * mi.n_bar * J;
    const double hi = 2.0 * (mi.n_bar + 1) * J;
    const double a = (wc - lo) / (mi.n_bar - 1);
    const double b = (wc - hi) / mi.n_bar;
    if (wc < lo) {
      win.u_min = 0.0;
      win.u_max = (hi - wc) / mi.n_bar;
    } else if (wc <= hi) {
      win.u_min = std::min(a, b);
      win.u_max = std::max(a, b);
    } else {
      win.u_min = 0.0;
      win.u_max = a;
    }
  }
  win.ok = win.u_min < lp.U && lp.U < win.u_max && lp.U >= 2.0 * J;
  return win;
}

}  // namespace bhwg
