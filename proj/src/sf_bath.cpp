// sf_bath.cpp — superfluid band structure and bath response closed forms.

#include "bhwg/sf_bath.hpp"

#include <cmath>
#include <cstdlib>
#include <limits>
#include <stdexcept>

#include "bhwg/errors.hpp"

namespace bhwg {

namespace {

constexpr double kEdgeClamp = 1e-9;  // band-edge clamp distance, units of J

void check_sf_inputs(const LatticeParams& lp, const SfParams& sf) {
  if (!(lp.J > 0.0) || !(lp.U >= 0.0) || !(lp.omega_c > 0.0)) {
    throw std::invalid_argument("sf_bath: malformed lattice parameters");
  }
  if (!(sf.n_0 > 0.0)) {
    throw std::invalid_argument("sf_bath: n_0 must be positive");
  }
}

double f_of_k(double k, const LatticeParams& lp, const SfParams& sf) {
  return lp.omega_c + 2.0 * lp.U * sf.n_0 - 2.0 * lp.J * std::cos(k);
}

// Signed integer power, exact for the residue pole bases which may be negative.
double ipow(double base, int n) {
  double out = 1.0;
  for (int i = 0; i < n; ++i) out *= base;
  return out;
}

}  // namespace

SfMode sf_mode(double k, const LatticeParams& lp, const SfParams& sf) {
  check_sf_inputs(lp, sf);
  const double f = f_of_k(k, lp, sf);
  const double un0 = lp.U * sf.n_0;
  if (!(f > un0)) {
    throw PhysicsError("sf_mode: f_k <= U n_0, quasiparticle construction undefined");
  }
  SfMode m;
  m.k = k;
  m.f_k = f;
  m.omega_k = std::sqrt((f - un0) * (f + un0));
  m.alpha_k = 0.5 * std::atanh(un0 / f);
  m.u_k = std::cosh(m.alpha_k);
  m.v_k = std::sinh(m.alpha_k);
  return m;
}

double dispersion_sf(double k, const LatticeParams& lp, const SfParams& sf) {
  check_sf_inputs(lp, sf);
  const double f = f_of_k(k, lp, sf);
  const double un0 = lp.U * sf.n_0;
  if (f * f < un0 * un0) {
    throw PhysicsError("dispersion_sf: f_k^2 < U^2 n_0^2, frequency would be imaginary");
  }
  return std::sqrt(std::abs((f - un0) * (f + un0)));
}

std::pair<double, double> bogoliubov_coeffs_sf(double k, const LatticeParams& lp,
                                               const SfParams& sf) {
  const SfMode m = sf_mode(k, lp, sf);
  return {m.u_k, m.v_k};
}

std::pair<double, double> band_edges_sf(const LatticeParams& lp, const SfParams& sf) {
  return {dispersion_sf(0.0, lp, sf), dispersion_sf(M_PI, lp, sf)};
}

double k1d_sf(double omega, const LatticeParams& lp, const SfParams& sf) {
  check_sf_inputs(lp, sf);
  const auto [w0, wpi] = band_edges_sf(lp, sf);
  if (!(omega > w0) || !(omega < wpi)) {
    throw PhysicsError("k1d_sf: frequency outside the open band interval");
  }
  const double un0 = lp.U * sf.n_0;
  const double cap_omega = std::hypot(omega, un0);
  const double arg = (lp.omega_c + 2.0 * un0 - cap_omega) / (2.0 * lp.J);
  if (!(arg >= -1.0) || !(arg <= 1.0)) {
    throw PhysicsError("k1d_sf: inversion argument left [-1, 1]");
  }
  return std::acos(arg);
}

SfResponse gamma_sf_response(int i, int j, double omega, const LatticeParams& lp,
                             const SfParams& sf, double g) {
  check_sf_inputs(lp, sf);
  const auto [w0, wpi] = band_edges_sf(lp, sf);
  SfResponse resp;
  if (omega < w0 || omega > wpi) {
    return resp;  // outside the band: no guided modes, no decay
  }
  const double clamp = kEdgeClamp * lp.J;
  double w_eval = omega;
  if (omega - w0 < clamp) {
    w_eval = w0 + clamp;
    resp.edge_clamped = true;
  } else if (wpi - omega < clamp) {
    w_eval = wpi - clamp;
    resp.edge_clamped = true;
  }
  const double un0 = lp.U * sf.n_0;
  const double cap_omega = std::hypot(w_eval, un0);
  const double two_j_cos_k = lp.omega_c + 2.0 * un0 - cap_omega;
  const double under = 4.0 * lp.J * lp.J - two_j_cos_k * two_j_cos_k;
  resp.kernel = 2.0 * lp.J * (cap_omega - un0) / (cap_omega * std::sqrt(under));
  resp.k_1d = std::acos(two_j_cos_k / (2.0 * lp.J));
  const int m = std::abs(i - j);
  resp.gamma = (g * g / lp.J) * resp.kernel * std::cos(*resp.k_1d * m * LatticeParams::d);
  return resp;
}

double gamma_sf(int i, int j, double omega, const LatticeParams& lp, const SfParams& sf,
                double g) {
  return gamma_sf_response(i, j, omega, lp, sf, g).gamma;
}

SfResponse delta_sf(int i, int j, double omega, const LatticeParams& lp,
                    const SfParams& sf, double g) {
  check_sf_inputs(lp, sf);
  const double w = omega / (2.0 * lp.J);
  const double w_c = lp.omega_c / (2.0 * lp.J);
  const double ucal = lp.U / (2.0 * lp.J);
  const double un0 = ucal * sf.n_0;  // U n_0 / 2J
  const double top = w_c + 2.0 * un0 + 1.0;  // approximated band top, units of 2J
  const bool upper = w > top;
  const bool lower = omega < 0.0;
  if (!upper && !lower) {
    throw PhysicsError(
        "delta_sf: closed form requires omega above the approximated band top "
        "(omega_c + 2 U n_0 + 2J) or omega < 0; elsewhere use the quadrature module");
  }

  // Pole pair tied to U alone. Its base lies in (0, 1) whenever the band
  // bottom omega_c + 2 U n_0 - 2J is positive, which SF validity guarantees.
  // At U = 0 the pair degenerates to 1 but its residue is identically zero,
  // so the term is skipped instead of evaluated.
  const double sb = w_c + 2.0 * un0;
  double b_plus = 1.0;
  double b_minus = 1.0;
  if (un0 > 0.0) {
    if (!(sb > 1.0)) {
      throw PhysicsError("delta_sf: approximated band bottom nonpositive, no valid pole");
    }
    const double b_gap = std::sqrt(sb * sb - 1.0);
    b_plus = sb + b_gap;
    b_minus = sb - b_gap;
  }

  // Pole pair tied to the probe frequency. Above the band its interior member
  // is negative (in (-1, 0)); below zero frequency it is positive.
  const double sc = w_c - w + 2.0 * un0;
  const double c_gap = std::sqrt(sc * sc - 1.0);
  const double c_plus = sc + c_gap;
  const double c_minus = sc - c_gap;
  const double c_in = upper ? c_plus : c_minus;

  const int m = std::abs(i - j);
  const double g2 = g * g;
  const double amp1 =
      (un0 > 0.0) ? -(g2 / lp.J) * un0 / (w * (b_plus - b_minus)) : 0.0;
  const double amp2 =
      (upper ? 1.0 : -1.0) * (g2 / lp.J) * (w - un0) / (w * (c_plus - c_minus));

  SfResponse resp;
  resp.plateau = 4.0 * g2 * sf.n_0 / omega;
  resp.f1 = amp1;
  resp.f2 = amp2;
  resp.lambda1 = (un0 > 0.0) ? 1.0 / std::log(1.0 / b_minus)
                             : std::numeric_limits<double>::infinity();
  resp.lambda2 = 1.0 / std::log(1.0 / std::abs(c_in));
  resp.delta = resp.plateau + amp1 * ipow(b_minus, m) + amp2 * ipow(c_in, m);
  return resp;
}

}  // namespace bhwg
