// dynamics.hpp — emitter-only Lindblad dynamics and superradiant-burst detection
#pragma once

#include <Eigen/Dense>

#include <vector>

#include "bhwg/params.hpp"

namespace bhwg {

/// Coefficient matrices of the emitter-only master equation
///   drho/dt = -i[H_eff, rho] + sum_ij Gamma_ij D[sigma_j, sigma_i^dag] rho
///             + Gamma' sum_i D[sigma_i, sigma_i^dag] rho,
/// with D[A, B] rho = A rho B - {B A, rho} / 2.  The Hamiltonian coefficients
/// combine both frequency branches of the coherent coupling,
///   h_eff(i, j) = Delta_ij(omega_e) + Delta_ji(-omega_e)       for i != j,
///   h_eff(i, i) = Delta_ii(omega_e) - Delta_ii(-omega_e),
/// which is the excitation-conserving normal ordering of
/// sum_ij [Delta_ij(omega_e) sigma_i^dag sigma_j
///         + Delta_ij(-omega_e) sigma_i sigma_j^dag]
/// with the constant term dropped.
struct EmitterLiouvillian {
  int n{1};                        // emitter count, hard cap 10
  Eigen::MatrixXcd h_eff{};        // n x n Hermitian coupling matrix, units of J
  Eigen::MatrixXd gamma_matrix{};  // n x n symmetric PSD decay matrix, units of J
  double gamma_prime{0.0};         // parasitic single-emitter decay, units of J
  Eigen::VectorXd gamma_eigenvalues{};    // decay-matrix spectrum before repair
  std::vector<Diagnostic> diagnostics{};  // PSD-repair and assembly warnings
};

/// Assembly options for build_liouvillian.
struct LiouvillianOptions {
  bool include_lamb_shift{true};  // keep the uniform h_eff diagonal shift
  int k_grid_size{4096};          // mode grid for quadrature-sourced couplings
  double eta{0.02};               // broadening ladder base for quadrature, units of J
};

/// Time-ordered observables of one integrated trajectory.  Samples sit on a
/// uniform output grid; rho snapshots are stored only when requested.  Memory
/// per stored snapshot is 16 * 4^n bytes.
struct Trajectory {
  std::vector<double> times{};           // output grid, units of 1/J
  std::vector<Eigen::MatrixXcd> rho{};   // density-matrix snapshots (optional)
  std::vector<double> population{};      // <sum_i sigma_i^dag sigma_i>
  std::vector<double> power{};           // -d(population)/dt from the generator, units of J
  std::vector<double> guided_power{};    // waveguide-channel part, power - gamma_prime * population
  std::vector<double> trace_drift{};     // |tr rho - 1| at each sample
  std::vector<double> min_eigenvalue{};  // smallest rho eigenvalue at each sample
  double initial_power_slope{0.0};         // dP/dt at t = 0+ from the generator, units of J^2
  double initial_guided_power_slope{0.0};  // guided-channel dP/dt at t = 0+, units of J^2
  int steps_accepted{0};
  int steps_rejected{0};
};

/// Integrator controls for evolve.
struct EvolveOptions {
  double rtol{1e-9};         // relative local error target per entry
  double atol{1e-12};        // absolute local error floor per entry
  bool store_states{true};   // keep rho snapshots at output samples
  double trace_abort{1e-6};  // abort threshold on |tr rho - 1|
};

/// Burst verdict extracted from a power trace.  The verdict is taken on the
/// waveguide-channel (guided) power: a parasitic channel at rate gamma_prime
/// drains excitation without feeding the collective output, and the closed
/// burst inequality bounds exactly the initial slope of the guided trace.
/// With gamma_prime = 0 the guided and total powers coincide.
struct BurstDetection {
  bool burst{false};           // peak guided power at t > 0 exceeds its initial value
  double peak_time{0.0};       // sample time of the guided-power maximum, units of 1/J
  double peak_power{0.0};      // guided power at the maximum, units of J
  double initial_power{0.0};   // guided power at t = 0+, units of J
  double initial_slope{0.0};   // guided dP/dt at t = 0+, secondary indicator, units of J^2
  bool slope_positive{false};  // initial_slope > 0
};

/// Validate raw coefficient matrices and assemble a Liouvillian.  The decay
/// matrix is eigen-decomposed; negative eigenvalues are clipped to zero, with
/// a warning diagnostic when the deficit exceeds finite-precision scale
/// (1e-10 times the largest eigenvalue).  Throws std::invalid_argument for
/// dimension mismatches, emitter counts outside [1, 10], non-Hermitian h_eff
/// (tolerance 1e-12), asymmetric gamma, non-finite entries, or negative
/// gamma_prime.
EmitterLiouvillian make_liouvillian(const Eigen::MatrixXcd& h_eff,
                                    const Eigen::MatrixXd& gamma_matrix,
                                    double gamma_prime);

/// Populate the Liouvillian for an emitter array coupled to the waveguide in
/// the given ground-state phase.  Decay entries come from the closed forms
/// (zero in a gap); coupling entries come from the closed forms where these
/// are valid at the requested frequency and from the broadened quadrature
/// otherwise (principal value for in-band frequencies, and always for the
/// Mott branch at -omega_e).  The decay closed forms are also evaluated at
/// -omega_e and checked to vanish there.  Throws std::invalid_argument for
/// invalid emitter arrays and PhysicsError for invalid phase parameters.
EmitterLiouvillian build_liouvillian(Phase phase, const LatticeParams& lp,
                                     const SfParams& sf, const MiParams& mi,
                                     const EmitterArray& emitters,
                                     const LiouvillianOptions& options = {});

/// Apply the generator once: returns drho/dt for the given density matrix.
Eigen::MatrixXcd apply_liouvillian(const EmitterLiouvillian& liouvillian,
                                   const Eigen::MatrixXcd& rho);

/// Density matrix of the fully excited product state on 2^n dimensions.
Eigen::MatrixXcd fully_excited_state(int n);

/// Integrate the master equation from rho0 to t_final with an embedded
/// adaptive Runge-Kutta pair (Dormand-Prince 5(4)).  Internal steps never
/// exceed dt_max; observables are sampled on the uniform grid of spacing
/// t_final / round(t_final / dt_max).  The trace is never renormalized; its
/// drift is a diagnostic and exceeding options.trace_abort raises
/// PhysicsError, as does step-size underflow.  Throws std::invalid_argument
/// when rho0 is not a 2^n density matrix for the Liouvillian.
Trajectory evolve(const EmitterLiouvillian& liouvillian,
                  const Eigen::MatrixXcd& rho0, double t_final, double dt_max,
                  const EvolveOptions& options = {});

/// Decide whether a trajectory shows a superradiant burst: true when the
/// maximum guided power over t > 0 exceeds its initial value by the relative
/// margin.  The margin is measured against the initial guided power with an
/// absolute floor of margin times population(0) / duration, so trajectories
/// whose power is zero to rounding never trigger.  The sign of the guided
/// dP/dt(0+) is reported as a secondary indicator.  Falls back to the total
/// power trace when guided_power is empty (hand-assembled trajectories).
/// Throws std::invalid_argument for trajectories with fewer than two samples.
BurstDetection detect_burst(const Trajectory& trajectory,
                            double relative_margin = 1e-6);

}  // namespace bhwg
