// superradiance.cpp — burst-criterion evaluation and phase-map generation.

#include "bhwg/superradiance.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "bhwg/errors.hpp"
#include "bhwg/mi_bath.hpp"
#include "bhwg/sf_bath.hpp"

namespace bhwg {

namespace {

constexpr double pi_v = 3.14159265358979323846;

void validate_condition_args(int n_e, double k1d_d, double gamma_ratio) {
  if (n_e < 1) {
    throw std::invalid_argument("burst_condition: n_e must be >= 1, got " +
                                std::to_string(n_e));
  }
  if (!std::isfinite(k1d_d) || k1d_d < 0.0 || k1d_d > pi_v) {
    throw std::invalid_argument("burst_condition: k1d_d must lie in [0, pi], got " +
                                std::to_string(k1d_d));
  }
  if (!std::isfinite(gamma_ratio) || gamma_ratio < 0.0) {
    throw std::invalid_argument("burst_condition: gamma_ratio must be >= 0, got " +
                                std::to_string(gamma_ratio));
  }
}

void validate_map_args(const std::vector<double>& u_grid,
                       const std::vector<int>& ne_grid, const BurstMapFixed& fixed) {
  if (u_grid.empty() || ne_grid.empty()) {
    throw std::invalid_argument("burst_phase_map: both grids must be non-empty");
  }
  for (double u : u_grid) {
    if (!std::isfinite(u) || u < 0.0) {
      throw std::invalid_argument("burst_phase_map: U values must be >= 0, got " +
                                  std::to_string(u));
    }
  }
  for (int n_e : ne_grid) {
    if (n_e < 1) {
      throw std::invalid_argument("burst_phase_map: N_e values must be >= 1, got " +
                                  std::to_string(n_e));
    }
  }
  if (!(fixed.J > 0.0) || !(fixed.g > 0.0) || fixed.gamma_prime < 0.0 ||
      !std::isfinite(fixed.omega_e) || !std::isfinite(fixed.omega_c)) {
    throw std::invalid_argument(
        "burst_phase_map: fixed parameters require J > 0, g > 0, "
        "gamma_prime >= 0, finite frequencies");
  }
}

// sin(n x) / sin(x) evaluated through the Chebyshev recurrence in cos(x),
// finite and continuous through sin(x) = 0 where the ratio limit is +-n.
double dirichlet_ratio(int n, double cos_x) {
  double prev = 0.0;
  double curr = 1.0;
  for (int order = 1; order < n; ++order) {
    const double next = 2.0 * cos_x * curr - prev;
    prev = curr;
    curr = next;
  }
  return curr;
}

// The per-interaction-strength data every cell of a map column shares.
struct ColumnSelection {
  bool defined{false};
  double k1d{std::numeric_limits<double>::quiet_NaN()};
  double gamma{std::numeric_limits<double>::quiet_NaN()};
};

ColumnSelection select_sf_column(double omega_e, const LatticeParams& lp,
                                 const SfParams& sf, double g) {
  const auto [lo, hi] = band_edges_sf(lp, sf);
  if (!(omega_e > lo && omega_e < hi)) {
    return {};
  }
  ColumnSelection sel;
  sel.defined = true;
  sel.k1d = k1d_sf(omega_e, lp, sf);
  sel.gamma = gamma_sf(0, 0, omega_e, lp, sf, g);
  return sel;
}

ColumnSelection select_mi_column(double omega_e, const LatticeParams& lp,
                                 const MiParams& mi, double g) {
  const MiResponse resp = gamma_mi(0, 0, omega_e, lp, mi, g);
  if (resp.chi_plus == 0 && resp.chi_minus == 0) {
    return {};
  }
  ColumnSelection sel;
  sel.defined = true;
  sel.gamma = resp.gamma;
  const bool doublon_leads =
      resp.chi_plus == 1 &&
      (resp.chi_minus == 0 || resp.kernel_plus >= resp.kernel_minus);
  sel.k1d = doublon_leads ? *resp.k_1d_plus : *resp.k_1d_minus;
  return sel;
}

}  // namespace

BurstCriterion burst_condition(int n_e, double k1d_d, double gamma_ratio) {
  validate_condition_args(n_e, k1d_d, gamma_ratio);
  const double ratio_root = dirichlet_ratio(n_e, std::cos(k1d_d));
  BurstCriterion crit{.n_e = n_e, .k1d_d = k1d_d, .gamma_ratio = gamma_ratio};
  crit.lhs = 0.5 * n_e + ratio_root * ratio_root / (2.0 * n_e);
  crit.rhs = 2.0 + gamma_ratio;
  crit.burst = crit.lhs > crit.rhs;
  return crit;
}

double gamma_1d(Phase phase, double omega_e, const LatticeParams& lp,
                const SfParams& sf, const MiParams& mi, double g) {
  if (phase == Phase::sf) {
    const auto [lo, hi] = band_edges_sf(lp, sf);
    if (!(omega_e > lo && omega_e < hi)) {
      throw PhysicsError("gamma_1d: omega_e = " + std::to_string(omega_e) +
                         " J lies outside the quasiparticle band [" +
                         std::to_string(lo) + ", " + std::to_string(hi) +
                         "] J where the decay rate vanishes");
    }
    return gamma_sf(0, 0, omega_e, lp, sf, g);
  }
  const MiResponse resp = gamma_mi(0, 0, omega_e, lp, mi, g);
  if (resp.chi_plus == 0 && resp.chi_minus == 0) {
    const auto doublon = band_edges_mi(+1, lp, mi);
    const auto holon = band_edges_mi(-1, lp, mi);
    throw PhysicsError("gamma_1d: omega_e = " + std::to_string(omega_e) +
                       " J lies outside the doublon band [" +
                       std::to_string(doublon.first) + ", " +
                       std::to_string(doublon.second) + "] J and the holon band [" +
                       std::to_string(holon.first) + ", " +
                       std::to_string(holon.second) +
                       "] J where the decay rate vanishes");
  }
  return resp.gamma;
}

BurstMap burst_phase_map(Phase phase, const std::vector<double>& u_grid,
                         const std::vector<int>& ne_grid, const BurstMapFixed& fixed) {
  validate_map_args(u_grid, ne_grid, fixed);
  BurstMap map{.phase = phase, .u_grid = u_grid, .ne_grid = ne_grid};
  map.cells.reserve(u_grid.size() * ne_grid.size());
  const SfParams sf{.n_0 = fixed.filling};
  const MiParams mi{.n_bar = static_cast<int>(std::lround(fixed.filling))};
  for (double u : u_grid) {
    const LatticeParams lp{.omega_c = fixed.omega_c, .J = fixed.J, .U = u};
    const ColumnSelection sel = phase == Phase::sf
                                    ? select_sf_column(fixed.omega_e, lp, sf, fixed.g)
                                    : select_mi_column(fixed.omega_e, lp, mi, fixed.g);
    for (int n_e : ne_grid) {
      BurstMapCell cell;
      cell.k1d = sel.k1d;
      cell.gamma_1d = sel.gamma;
      if (!sel.defined) {
        cell.state = BurstCellState::undefined;
      } else {
        cell.criterion = burst_condition(n_e, sel.k1d * LatticeParams::d,
                                         fixed.gamma_prime / sel.gamma);
        cell.state = cell.criterion.burst ? BurstCellState::burst
                                          : BurstCellState::no_burst;
      }
      map.cells.push_back(cell);
    }
  }
  return map;
}

}  // namespace bhwg
