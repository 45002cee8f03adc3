// mi_bath.cpp — Mott-phase band structure and bath response closed forms.

#include "bhwg/mi_bath.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <stdexcept>

#include "bhwg/errors.hpp"

namespace bhwg {

namespace {

constexpr double kEdgeClamp = 1e-9;  // band-edge clamp distance, units of J

void check_mi_inputs(const LatticeParams& lp, const MiParams& mi) {
  if (!(lp.J > 0.0) || !(lp.U >= 0.0) || !(lp.omega_c > 0.0)) {
    throw std::invalid_argument("mi_bath: malformed lattice parameters");
  }
  if (mi.n_bar < 1) {
    throw std::invalid_argument("mi_bath: n_bar must be at least 1");
  }
}

void check_branch(int sigma) {
  if (sigma != 1 && sigma != -1) {
    throw std::invalid_argument("mi_bath: branch sigma must be +1 or -1");
  }
}

double ipow(double base, int n) {
  double out = 1.0;
  for (int i = 0; i < n; ++i) out *= base;
  return out;
}

// One conjugate pole pair [t +- sqrt(t^2 - n^2)]/n of a quadratic with product
// 1. Requires |t| > n.
struct PolePair {
  double minus{0.0};
  double plus{0.0};
};

PolePair pole_pair(double t, double n) {
  const double s = std::sqrt(t * t - n * n);
  return {(t - s) / n, (t + s) / n};
}

}  // namespace

MiMode mi_mode(double k, const LatticeParams& lp, const MiParams& mi) {
  check_mi_inputs(lp, mi);
  MiMode m;
  const double nb = mi.n_bar;
  const double root = std::sqrt(nb * (nb + 1.0));
  m.k = k;
  m.e_plus = lp.omega_c + lp.U * nb - 2.0 * lp.J * (nb + 1.0) * std::cos(k);
  m.e_minus = lp.omega_c - lp.U * (nb - 1.0) - 2.0 * lp.J * nb * std::cos(k);
  m.delta_pair = std::complex<double>(0.0, -2.0 * lp.J * root * std::sin(k));
  m.small_delta = 0.5 * (m.e_plus - m.e_minus);
  m.varsigma = m.e_plus + m.e_minus;
  m.eta = 0.5 * std::hypot(m.varsigma, 2.0 * std::abs(m.delta_pair));
  m.eps_plus = m.small_delta + m.eta;
  m.eps_minus = -m.small_delta + m.eta;
  // 2 i delta_pair is real, so the rotation angle is real as well.
  m.theta = std::atan2(4.0 * lp.J * root * std::sin(k), m.varsigma);
  m.u = std::cos(0.5 * m.theta);
  m.v_im = std::sin(0.5 * m.theta);
  return m;
}

double dispersion_mi(double k, int sigma, const LatticeParams& lp, const MiParams& mi) {
  check_branch(sigma);
  const MiMode m = mi_mode(k, lp, mi);
  return sigma > 0 ? m.eps_plus : m.eps_minus;
}

std::pair<double, double> bogoliubov_coeffs_mi(double k, const LatticeParams& lp,
                                               const MiParams& mi) {
  const MiMode m = mi_mode(k, lp, mi);
  return {m.u, m.v_im};
}

std::pair<double, double> band_edges_mi(int sigma, const LatticeParams& lp,
                                        const MiParams& mi) {
  const double a = dispersion_mi(0.0, sigma, lp, mi);
  const double b = dispersion_mi(M_PI, sigma, lp, mi);
  return {std::min(a, b), std::max(a, b)};
}

double k1d_mi(double omega, int sigma, const LatticeParams& lp, const MiParams& mi) {
  check_branch(sigma);
  check_mi_inputs(lp, mi);
  const auto [low, high] = band_edges_mi(sigma, lp, mi);
  if (!(omega > low) || !(omega < high)) {
    throw PhysicsError("k1d_mi: frequency outside the open band interval");
  }
  // The two hybridized bands are the roots of
  //   (E_+(k) - w)(E_-(k) + w) + |Delta(k)|^2 = 0
  // whose cos^2 k terms cancel, leaving an exact arccos inversion. The holon
  // branch is reached by sending omega -> -omega.
  const double w = sigma > 0 ? omega : -omega;
  const double nb = mi.n_bar;
  const double a = lp.omega_c + lp.U * nb - w;
  const double b = lp.omega_c - lp.U * (nb - 1.0) + w;
  const double denom = 2.0 * lp.J * ((2.0 * nb + 1.0) * lp.omega_c + lp.U + w);
  const double arg = (4.0 * lp.J * lp.J * nb * (nb + 1.0) + a * b) / denom;
  if (!(arg >= -1.0) || !(arg <= 1.0)) {
    throw PhysicsError("k1d_mi: inversion argument left [-1, 1]");
  }
  return std::acos(arg);
}

MiResponse gamma_mi(int i, int j, double omega, const LatticeParams& lp,
                    const MiParams& mi, double g) {
  check_mi_inputs(lp, mi);
  MiResponse resp;
  const int m_sep = std::abs(i - j);
  const double nb = mi.n_bar;
  const double clamp = kEdgeClamp * lp.J;
  for (const int sigma : {+1, -1}) {
    const auto [low, high] = band_edges_mi(sigma, lp, mi);
    if (omega < low || omega > high) continue;
    double w_eval = omega;
    if (omega - low < clamp) {
      w_eval = low + clamp;
      resp.edge_clamped = true;
    } else if (high - omega < clamp) {
      w_eval = high - clamp;
      resp.edge_clamped = true;
    }
    const double k = k1d_mi(w_eval, sigma, lp, mi);
    const MiMode mode = mi_mode(k, lp, mi);
    const double two_eta = 2.0 * mode.eta;
    const double slope_factor =
        (2.0 * nb + 1.0) * (2.0 * lp.omega_c + lp.U) - 2.0 * lp.J * std::cos(k);
    const double denom = std::abs((1.0 + sigma * slope_factor / two_eta) * std::sin(k));
    const double weight = (nb + 0.5) * mode.varsigma / two_eta + 0.5 * sigma;
    const double kernel = 2.0 * weight / denom;
    const double term =
        (g * g / lp.J) * kernel * std::cos(k * m_sep * LatticeParams::d);
    resp.gamma += term;
    if (sigma > 0) {
      resp.chi_plus = 1;
      resp.k_1d_plus = k;
      resp.kernel_plus = kernel;
    } else {
      resp.chi_minus = 1;
      resp.k_1d_minus = k;
      resp.kernel_minus = kernel;
    }
  }
  return resp;
}

MiResponse delta_mi(int i, int j, double omega, const LatticeParams& lp,
                    const MiParams& mi, double g) {
  check_mi_inputs(lp, mi);
  const double nb = mi.n_bar;
  // Bare (small-hopping) band intervals. Their endpoints coincide with the
  // hybridized bands' because the pairing vanishes at k = 0 and k = pi.
  const double top_p = lp.omega_c + lp.U * nb + 2.0 * lp.J * (nb + 1.0);
  const double bot_p = lp.omega_c + lp.U * nb - 2.0 * lp.J * (nb + 1.0);
  const double top_m = lp.omega_c - lp.U * (nb - 1.0) + 2.0 * lp.J * nb;
  const double bot_m = lp.omega_c - lp.U * (nb - 1.0) - 2.0 * lp.J * nb;
  if ((omega >= bot_p && omega <= top_p) || (omega >= bot_m && omega <= top_m)) {
    throw PhysicsError("delta_mi: frequency inside a quasiparticle band; principal-value "
                       "evaluation lives in the quadrature module");
  }
  if (!(omega > std::max(top_p, top_m))) {
    throw PhysicsError("delta_mi: closed form covers only the upper bandgap; for lower "
                       "gaps use the quadrature module");
  }

  const double two_j = 2.0 * lp.J;
  const double w = omega / two_j;
  const double w_c = lp.omega_c / two_j;
  const double ucal = lp.U / two_j;

  const double t0 = 2.0 * w_c + ucal;
  if (!(t0 > 2.0 * nb + 1.0)) {
    throw PhysicsError("delta_mi: band-sum frequency too low, probe-independent pole "
                       "pair leaves the real axis");
  }
  const PolePair z0 = pole_pair(t0, 2.0 * nb + 1.0);
  const PolePair z1 = pole_pair(w_c - w + ucal * nb, nb + 1.0);
  const PolePair z2 = pole_pair(w_c - w - ucal * (nb - 1.0), nb);

  const int m_sep = std::abs(i - j);
  auto zm = [m_sep](double z) { return ipow(z, m_sep); };
  const double frac_lo = nb / (2.0 * nb + 1.0);
  const double frac_hi = (nb + 1.0) / (2.0 * nb + 1.0);

  // Interior poles in the upper gap: z0.minus in (0,1), z1.plus and z2.plus in
  // (-1,0). Each simple-pole residue of the contour integrand appears once.
  const double doublon_main = zm(z1.plus) / (z1.plus - z1.minus);
  const double doublon_corr =
      (z1.plus * z1.plus - 1.0) * zm(z1.plus) /
          ((z1.plus - z1.minus) * (z1.plus - z0.minus) * (z1.plus - z0.plus)) +
      (z0.minus * z0.minus - 1.0) * zm(z0.minus) /
          ((z0.minus - z1.minus) * (z0.minus - z1.plus) * (z0.minus - z0.plus));
  const double holon_main = zm(z2.plus) / (z2.plus - z2.minus);
  const double holon_corr =
      (z2.plus * z2.plus - 1.0) * zm(z2.plus) /
          ((z2.plus - z2.minus) * (z2.plus - z0.minus) * (z2.plus - z0.plus)) +
      (z0.minus * z0.minus - 1.0) * zm(z0.minus) /
          ((z0.minus - z2.minus) * (z0.minus - z2.plus) * (z0.minus - z0.plus));
  const double integral =
      (doublon_main + frac_lo * doublon_corr + holon_main - frac_hi * holon_corr) / lp.J;

  MiResponse resp;
  resp.delta = g * g * integral;
  resp.poles.z0_minus = z0.minus;
  resp.poles.z0_plus = z0.plus;
  resp.poles.z1_minus = z1.minus;
  resp.poles.z1_plus = z1.plus;
  resp.poles.z2_minus = z2.minus;
  resp.poles.z2_plus = z2.plus;
  resp.poles.lambda0_minus = 1.0 / std::log(1.0 / z0.minus);
  resp.poles.lambda1_plus = 1.0 / std::log(1.0 / std::abs(z1.plus));
  resp.poles.lambda2_plus = 1.0 / std::log(1.0 / std::abs(z2.plus));
  return resp;
}

}  // namespace bhwg
