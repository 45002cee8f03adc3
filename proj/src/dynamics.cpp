// dynamics.cpp — emitter-only Lindblad dynamics and superradiant-burst detection
#include "bhwg/dynamics.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <map>
#include <sstream>
#include <stdexcept>
#include <utility>
#include <vector>

#include "bhwg/bath_oracle.hpp"
#include "bhwg/errors.hpp"
#include "bhwg/mi_bath.hpp"
#include "bhwg/sf_bath.hpp"

namespace bhwg {

namespace {

constexpr int max_emitters = 10;

// Dormand-Prince 5(4) tableau for an autonomous right-hand side; the last
// a-row doubles as the fifth-order solution weights, so the seventh stage
// evaluates the generator at the accepted state.
constexpr double dp_a[7][6] = {
    {0.0, 0.0, 0.0, 0.0, 0.0, 0.0},
    {0.2, 0.0, 0.0, 0.0, 0.0, 0.0},
    {3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0},
    {44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0},
    {19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0, 0.0,
     0.0},
    {9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0,
     -5103.0 / 18656.0, 0.0},
    {35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0,
     11.0 / 84.0}};
constexpr double dp_err[7] = {71.0 / 57600.0,     0.0,          -71.0 / 16695.0,
                              71.0 / 1920.0,      -17253.0 / 339200.0,
                              22.0 / 525.0,       -1.0 / 40.0};

double excitation_weight(long basis_index) {
  return double(std::popcount(static_cast<unsigned long long>(basis_index)));
}

// <N> for a density matrix in the bit-indexed product basis.
double total_excitation(const Eigen::MatrixXcd& rho) {
  double value = 0.0;
  for (long b = 0; b < rho.rows(); ++b) {
    value += excitation_weight(b) * rho(b, b).real();
  }
  return value;
}

// -tr(rate * N) for a generator output, the emitted power.
double emitted_power(const Eigen::MatrixXcd& rate) {
  double value = 0.0;
  for (long b = 0; b < rate.rows(); ++b) {
    value -= excitation_weight(b) * rate(b, b).real();
  }
  return value;
}

}  // namespace

EmitterLiouvillian make_liouvillian(const Eigen::MatrixXcd& h_eff,
                                    const Eigen::MatrixXd& gamma_matrix,
                                    double gamma_prime) {
  const long n = h_eff.rows();
  if (n < 1 || n > max_emitters) {
    throw std::invalid_argument(
        "make_liouvillian: emitter count must lie in [1, 10]");
  }
  if (h_eff.cols() != n || gamma_matrix.rows() != n || gamma_matrix.cols() != n) {
    throw std::invalid_argument(
        "make_liouvillian: h_eff and gamma_matrix must be square with matching "
        "dimensions");
  }
  if (!h_eff.allFinite() || !gamma_matrix.allFinite()) {
    throw std::invalid_argument(
        "make_liouvillian: coefficient matrices must be finite");
  }
  if (!std::isfinite(gamma_prime) || gamma_prime < 0.0) {
    throw std::invalid_argument(
        "make_liouvillian: gamma_prime must be finite and non-negative");
  }
  const double h_scale = std::max(1.0, h_eff.cwiseAbs().maxCoeff());
  if ((h_eff - h_eff.adjoint()).cwiseAbs().maxCoeff() > 1e-12 * h_scale) {
    throw std::invalid_argument(
        "make_liouvillian: h_eff must be Hermitian to 1e-12");
  }
  const double g_scale = std::max(1.0, gamma_matrix.cwiseAbs().maxCoeff());
  if ((gamma_matrix - gamma_matrix.transpose()).cwiseAbs().maxCoeff() >
      1e-12 * g_scale) {
    throw std::invalid_argument(
        "make_liouvillian: gamma_matrix must be symmetric to 1e-12");
  }

  EmitterLiouvillian lv;
  lv.n = static_cast<int>(n);
  lv.h_eff = 0.5 * (h_eff + h_eff.adjoint());
  lv.gamma_prime = gamma_prime;

  const Eigen::MatrixXd sym = 0.5 * (gamma_matrix + gamma_matrix.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(sym);
  lv.gamma_eigenvalues = solver.eigenvalues();
  const double top = std::max(0.0, lv.gamma_eigenvalues.maxCoeff());
  const double noise_floor = -1e-10 * top;
  Eigen::VectorXd clipped = lv.gamma_eigenvalues;
  double worst = 0.0;
  for (long m = 0; m < clipped.size(); ++m) {
    if (clipped(m) < 0.0) {
      worst = std::min(worst, clipped(m));
      clipped(m) = 0.0;
    }
  }
  if (worst < noise_floor) {
    std::ostringstream msg;
    msg << "clipped negative decay-matrix eigenvalue " << worst
        << " to zero during PSD repair";
    lv.diagnostics.push_back({Severity::warning, msg.str()});
  }
  lv.gamma_matrix =
      solver.eigenvectors() * clipped.asDiagonal() * solver.eigenvectors().transpose();
  lv.gamma_matrix = 0.5 * (lv.gamma_matrix + lv.gamma_matrix.transpose()).eval();
  return lv;
}

EmitterLiouvillian build_liouvillian(Phase phase, const LatticeParams& lp,
                                     const SfParams& sf, const MiParams& mi,
                                     const EmitterArray& emitters,
                                     const LiouvillianOptions& options) {
  const std::size_t count = emitters.positions.size();
  if (count < 1) {
    throw std::invalid_argument(
        "build_liouvillian: at least one emitter is required");
  }
  if (count > static_cast<std::size_t>(max_emitters)) {
    throw std::invalid_argument(
        "build_liouvillian: emitter count capped at 10 (dense 2^n states)");
  }
  std::vector<Diagnostic> notes;
  for (const Diagnostic& d : validate(lp, emitters)) {
    if (d.severity == Severity::error) {
      throw std::invalid_argument("build_liouvillian: " + d.message);
    }
    notes.push_back(d);
  }
  if (!std::isfinite(emitters.omega_e) || emitters.omega_e <= 0.0) {
    throw std::invalid_argument(
        "build_liouvillian: omega_e must be positive and finite");
  }
  if (options.k_grid_size < 256 || options.k_grid_size % 2 != 0) {
    throw std::invalid_argument(
        "build_liouvillian: k_grid_size must be even and at least 256");
  }
  if (!std::isfinite(options.eta) || options.eta <= 0.0) {
    throw std::invalid_argument(
        "build_liouvillian: eta must be positive and finite");
  }
  if (phase == Phase::sf) {
    for (const Diagnostic& d : validate_sf_regime(lp, sf)) {
      notes.push_back(d);
    }
  } else {
    const MiWindow window = validate_mi_regime(lp, mi);
    if (!window.ok) {
      std::ostringstream msg;
      msg << "U = " << lp.U << " lies outside the Mott stability window ["
          << window.u_min << ", " << window.u_max << "]";
      notes.push_back({Severity::warning, msg.str()});
    }
  }

  const double we = emitters.omega_e;
  const double g = emitters.g;
  const auto quadrature_delta = [&](int separation, double omega) {
    CorrelatorSpec spec{};
    spec.phase = phase;
    spec.lattice = lp;
    spec.sf = sf;
    spec.mi = mi;
    spec.i = 0;
    spec.j = separation;
    spec.g = g;
    spec.k_grid_size = options.k_grid_size;
    spec.eta = options.eta;
    spec.dispersion_mode = DispersionMode::exact;
    return response_quadrature(spec, omega).delta;
  };

  double sf_gap_floor = 0.0;
  double mi_gap_floor = 0.0;
  if (phase == Phase::sf) {
    sf_gap_floor = lp.omega_c + 2.0 * lp.U * sf.n_0 + 2.0 * lp.J;
  } else {
    mi_gap_floor = std::max(band_edges_mi(+1, lp, mi).second,
                            band_edges_mi(-1, lp, mi).second);
  }

  std::map<int, double> decay;
  std::map<int, double> coupling_plus;
  std::map<int, double> coupling_minus;
  bool clamped = false;
  for (std::size_t a = 0; a < count; ++a) {
    for (std::size_t b = a; b < count; ++b) {
      const int separation = emitters.positions[b] - emitters.positions[a];
      if (decay.count(separation) != 0) {
        continue;
      }
      double gamma_value = 0.0;
      double gamma_negative = 0.0;
      double plus = 0.0;
      double minus = 0.0;
      if (phase == Phase::sf) {
        const SfResponse resp = gamma_sf_response(0, separation, we, lp, sf, g);
        gamma_value = resp.gamma;
        clamped = clamped || resp.edge_clamped;
        gamma_negative = gamma_sf(0, separation, -we, lp, sf, g);
        plus = (we > sf_gap_floor) ? delta_sf(0, separation, we, lp, sf, g).delta
                                   : quadrature_delta(separation, we);
        minus = delta_sf(0, separation, -we, lp, sf, g).delta;
      } else {
        const MiResponse resp = gamma_mi(0, separation, we, lp, mi, g);
        gamma_value = resp.gamma;
        clamped = clamped || resp.edge_clamped;
        gamma_negative = gamma_mi(0, separation, -we, lp, mi, g).gamma;
        plus = (we > mi_gap_floor) ? delta_mi(0, separation, we, lp, mi, g).delta
                                   : quadrature_delta(separation, we);
        minus = quadrature_delta(separation, -we);
      }
      if (gamma_negative != 0.0) {
        throw PhysicsError(
            "build_liouvillian: decay at -omega_e must vanish for a positive "
            "quasiparticle spectrum");
      }
      decay[separation] = gamma_value;
      coupling_plus[separation] = plus;
      coupling_minus[separation] = minus;
    }
  }
  if (clamped) {
    notes.push_back({Severity::warning,
                     "omega_e sits within the 1e-9 J edge guard of a band; the "
                     "decay kernel was clamped"});
  }

  const long n = static_cast<long>(count);
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(n, n);
  Eigen::MatrixXd gm = Eigen::MatrixXd::Zero(n, n);
  for (long a = 0; a < n; ++a) {
    for (long b = 0; b < n; ++b) {
      const int separation = std::abs(emitters.positions[static_cast<std::size_t>(b)] -
                                      emitters.positions[static_cast<std::size_t>(a)]);
      gm(a, b) = decay.at(separation);
      if (a == b) {
        h(a, b) = options.include_lamb_shift
                      ? coupling_plus.at(0) - coupling_minus.at(0)
                      : 0.0;
      } else {
        h(a, b) = coupling_plus.at(separation) + coupling_minus.at(separation);
      }
    }
  }

  EmitterLiouvillian lv = make_liouvillian(h, gm, emitters.gamma_prime);
  lv.diagnostics.insert(lv.diagnostics.begin(), notes.begin(), notes.end());
  return lv;
}

Eigen::MatrixXcd apply_liouvillian(const EmitterLiouvillian& liouvillian,
                                   const Eigen::MatrixXcd& rho) {
  const int n = liouvillian.n;
  const long dim = 1L << n;
  if (rho.rows() != dim || rho.cols() != dim) {
    throw std::invalid_argument("apply_liouvillian: rho must be 2^n x 2^n");
  }
  // Drift: with M = -i h_eff - (gamma + gamma' I) / 2, the commutator and
  // anticommutator terms combine into X + X^dag where
  // X = sum_ij M_ij sigma_i^dag sigma_j rho.  X^dag is accumulated directly
  // through column operations and X recovered as its adjoint.
  Eigen::MatrixXcd m = std::complex<double>(0.0, -1.0) * liouvillian.h_eff;
  m -= (0.5 * (liouvillian.gamma_matrix +
               liouvillian.gamma_prime * Eigen::MatrixXd::Identity(n, n)))
           .cast<std::complex<double>>();
  Eigen::MatrixXcd x_adj = Eigen::MatrixXcd::Zero(dim, dim);
  for (int i = 0; i < n; ++i) {
    const long bi = 1L << i;
    for (int j = 0; j < n; ++j) {
      const std::complex<double> coeff = std::conj(m(i, j));
      if (coeff == std::complex<double>(0.0, 0.0)) {
        continue;
      }
      const long bj = 1L << j;
      if (i == j) {
        for (long c = 0; c < dim; ++c) {
          if ((c & bi) != 0) {
            x_adj.col(c) += coeff * rho.col(c);
          }
        }
      } else {
        for (long c = 0; c < dim; ++c) {
          if ((c & bi) != 0 && (c & bj) == 0) {
            x_adj.col(c) += coeff * rho.col(c - bi + bj);
          }
        }
      }
    }
  }
  Eigen::MatrixXcd out = x_adj + x_adj.adjoint();

  // Jump term sum_ij K_ij sigma_j rho sigma_i^dag with K = gamma + gamma' I.
  Eigen::MatrixXcd lowered(dim, dim);
  for (int j = 0; j < n; ++j) {
    const long bj = 1L << j;
    bool used = false;
    for (int i = 0; i < n && !used; ++i) {
      used = liouvillian.gamma_matrix(i, j) != 0.0 ||
             (i == j && liouvillian.gamma_prime != 0.0);
    }
    if (!used) {
      continue;
    }
    for (long block = 0; block < dim; block += 2 * bj) {
      lowered.middleRows(block, bj) = rho.middleRows(block + bj, bj);
      lowered.middleRows(block + bj, bj).setZero();
    }
    for (int i = 0; i < n; ++i) {
      const double k_ij = liouvillian.gamma_matrix(i, j) +
                          (i == j ? liouvillian.gamma_prime : 0.0);
      if (k_ij == 0.0) {
        continue;
      }
      const long bi = 1L << i;
      for (long c = 0; c < dim; ++c) {
        if ((c & bi) == 0) {
          out.col(c) += k_ij * lowered.col(c | bi);
        }
      }
    }
  }
  return out;
}

Eigen::MatrixXcd fully_excited_state(int n) {
  if (n < 1 || n > max_emitters) {
    throw std::invalid_argument(
        "fully_excited_state: emitter count must lie in [1, 10]");
  }
  const long dim = 1L << n;
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(dim, dim);
  rho(dim - 1, dim - 1) = 1.0;
  return rho;
}

Trajectory evolve(const EmitterLiouvillian& liouvillian,
                  const Eigen::MatrixXcd& rho0, double t_final, double dt_max,
                  const EvolveOptions& options) {
  const long dim = 1L << liouvillian.n;
  if (rho0.rows() != dim || rho0.cols() != dim) {
    throw std::invalid_argument("evolve: rho0 must be 2^n x 2^n");
  }
  if (!rho0.allFinite()) {
    throw std::invalid_argument("evolve: rho0 must be finite");
  }
  const double scale = std::max(1.0, rho0.cwiseAbs().maxCoeff());
  if ((rho0 - rho0.adjoint()).cwiseAbs().maxCoeff() > 1e-10 * scale) {
    throw std::invalid_argument("evolve: rho0 must be Hermitian");
  }
  if (std::abs(rho0.trace() - std::complex<double>(1.0, 0.0)) > 1e-8) {
    throw std::invalid_argument("evolve: rho0 must have unit trace");
  }
  {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(rho0,
                                                           Eigen::EigenvaluesOnly);
    if (solver.eigenvalues().minCoeff() < -1e-8) {
      throw std::invalid_argument("evolve: rho0 must be positive semidefinite");
    }
  }
  if (!std::isfinite(t_final) || t_final <= 0.0) {
    throw std::invalid_argument("evolve: t_final must be positive and finite");
  }
  if (!std::isfinite(dt_max) || dt_max <= 0.0) {
    throw std::invalid_argument("evolve: dt_max must be positive and finite");
  }
  if (!std::isfinite(options.rtol) || options.rtol <= 0.0 ||
      !std::isfinite(options.atol) || options.atol < 0.0) {
    throw std::invalid_argument("evolve: invalid integration tolerances");
  }

  const long n_out = std::max(1L, std::lround(t_final / dt_max));
  Trajectory traj;
  traj.times.reserve(n_out + 1);
  traj.population.reserve(n_out + 1);
  traj.power.reserve(n_out + 1);
  traj.guided_power.reserve(n_out + 1);
  traj.trace_drift.reserve(n_out + 1);
  traj.min_eigenvalue.reserve(n_out + 1);
  if (options.store_states) {
    traj.rho.reserve(n_out + 1);
  }

  Eigen::MatrixXcd y = 0.5 * (rho0 + rho0.adjoint());
  const auto sample = [&](double t, const Eigen::MatrixXcd& state) {
    traj.times.push_back(t);
    const Eigen::MatrixXcd rate = apply_liouvillian(liouvillian, state);
    const double population = total_excitation(state);
    const double power = emitted_power(rate);
    traj.population.push_back(population);
    traj.power.push_back(power);
    traj.guided_power.push_back(power - liouvillian.gamma_prime * population);
    traj.trace_drift.push_back(std::abs(state.trace() - std::complex<double>(1.0, 0.0)));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(state,
                                                           Eigen::EigenvaluesOnly);
    traj.min_eigenvalue.push_back(solver.eigenvalues().minCoeff());
    if (options.store_states) {
      traj.rho.push_back(state);
    }
  };
  sample(0.0, y);
  {
    const Eigen::MatrixXcd first = apply_liouvillian(liouvillian, y);
    const Eigen::MatrixXcd second = apply_liouvillian(liouvillian, first);
    traj.initial_power_slope = emitted_power(second);
    // d(guided)/dt = d(power)/dt - gamma' * d(population)/dt; the trailing
    // term is gamma' times the total power at t = 0.
    traj.initial_guided_power_slope =
        traj.initial_power_slope + liouvillian.gamma_prime * traj.power.front();
  }

  std::vector<Eigen::MatrixXcd> k(7);
  Eigen::MatrixXcd stage_state(dim, dim);
  Eigen::MatrixXcd error(dim, dim);
  double t_now = 0.0;
  double dt = dt_max;
  const double dt_floor = 1e-15 * std::max(1.0, t_final);
  for (long m_out = 1; m_out <= n_out; ++m_out) {
    const double t_target = t_final * double(m_out) / double(n_out);
    while (t_now < t_target - 1e-12 * t_final) {
      double h_step = std::min({dt, dt_max, t_target - t_now});
      bool accepted = false;
      while (!accepted) {
        if (h_step < dt_floor) {
          std::ostringstream msg;
          msg << "evolve: step size underflow at t = " << t_now << " (step "
              << h_step << " after " << traj.steps_accepted << " accepted and "
              << traj.steps_rejected << " rejected steps)";
          throw PhysicsError(msg.str());
        }
        k[0] = apply_liouvillian(liouvillian, y);
        for (int s = 1; s < 7; ++s) {
          stage_state = y;
          for (int q = 0; q < s; ++q) {
            if (dp_a[s][q] != 0.0) {
              stage_state.noalias() += (h_step * dp_a[s][q]) * k[q];
            }
          }
          k[s] = apply_liouvillian(liouvillian, stage_state);
        }
        // stage_state now holds the fifth-order solution (last a-row).
        error.setZero();
        for (int q = 0; q < 7; ++q) {
          if (dp_err[q] != 0.0) {
            error.noalias() += (h_step * dp_err[q]) * k[q];
          }
        }
        const double err_norm =
            (error.cwiseAbs().array() /
             (options.atol +
              options.rtol * y.cwiseAbs().array().max(stage_state.cwiseAbs().array())))
                .maxCoeff();
        if (err_norm <= 1.0) {
          accepted = true;
          ++traj.steps_accepted;
          t_now += h_step;
          y.swap(stage_state);
          const double drift = std::abs(y.trace() - std::complex<double>(1.0, 0.0));
          if (drift > options.trace_abort) {
            std::ostringstream msg;
            msg << "evolve: trace drift " << drift << " exceeded "
                << options.trace_abort << " at t = " << t_now << " after "
                << traj.steps_accepted << " steps";
            throw PhysicsError(msg.str());
          }
          const double grow = (err_norm == 0.0)
                                  ? 5.0
                                  : std::clamp(0.9 * std::pow(err_norm, -0.2), 0.2, 5.0);
          dt = h_step * grow;
        } else {
          ++traj.steps_rejected;
          const double shrink =
              std::clamp(0.9 * std::pow(err_norm, -0.2), 0.1, 0.7);
          h_step *= shrink;
        }
      }
    }
    sample(t_target, y);
  }
  return traj;
}

BurstDetection detect_burst(const Trajectory& trajectory,
                            double relative_margin) {
  if (trajectory.times.size() < 2 ||
      trajectory.power.size() != trajectory.times.size()) {
    throw std::invalid_argument(
        "detect_burst: trajectory needs at least two power samples");
  }
  if (!std::isfinite(relative_margin) || relative_margin < 0.0) {
    throw std::invalid_argument(
        "detect_burst: relative margin must be finite and non-negative");
  }
  const bool have_guided =
      trajectory.guided_power.size() == trajectory.times.size();
  const std::vector<double>& trace =
      have_guided ? trajectory.guided_power : trajectory.power;
  BurstDetection det;
  det.initial_power = trace.front();
  det.initial_slope = have_guided ? trajectory.initial_guided_power_slope
                                  : trajectory.initial_power_slope;
  det.slope_positive = det.initial_slope > 0.0;
  det.peak_time = trajectory.times[1];
  det.peak_power = trace[1];
  for (std::size_t m = 1; m < trace.size(); ++m) {
    if (trace[m] > det.peak_power) {
      det.peak_power = trace[m];
      det.peak_time = trajectory.times[m];
    }
  }
  const double duration = trajectory.times.back() - trajectory.times.front();
  const double rate_scale =
      (!trajectory.population.empty() && duration > 0.0)
          ? trajectory.population.front() / duration
          : 0.0;
  const double margin =
      relative_margin * std::max(std::abs(det.initial_power), rate_scale);
  det.burst = det.peak_power > det.initial_power + margin;
  return det;
}

}  // namespace bhwg
