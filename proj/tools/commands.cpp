// commands.cpp — subcommand implementations on top of the simulation library.
#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "bhwg/bath_oracle.hpp"
#include "bhwg/dynamics.hpp"
#include "bhwg/ed_oracle.hpp"
#include "bhwg/errors.hpp"
#include "bhwg/mi_bath.hpp"
#include "bhwg/sf_bath.hpp"
#include "bhwg/superradiance.hpp"

namespace bhwg_cli {

namespace {

constexpr double kPi = std::numbers::pi;

void announce(const std::string& path) { std::cout << "wrote " << path << "\n"; }

void collect(std::vector<std::string>& sink, const std::vector<bhwg::Diagnostic>& source) {
  for (const auto& diag : source) {
    const char* label = diag.severity == bhwg::Severity::error ? "error: " : "warning: ";
    sink.push_back(label + diag.message);
  }
}

void print_diagnostics(const std::vector<std::string>& diagnostics) {
  for (const auto& line : diagnostics) {
    std::cerr << line << "\n";
  }
}

std::vector<std::string> phase_diagnostics(const ParsedConfig& config) {
  std::vector<std::string> out;
  if (config.phase == bhwg::Phase::sf) {
    collect(out, bhwg::validate_sf_regime(config.lattice, config.sf));
  } else {
    // Throws PhysicsError when omega_c <= 2J, where the Mott case analysis
    // does not apply; that surfaces as exit code 2.
    const bhwg::MiWindow window = bhwg::validate_mi_regime(config.lattice, config.mi);
    if (!window.ok) {
      out.push_back("warning: U outside the Mott validity window (" +
                    format_double(window.u_min) + ", " + format_double(window.u_max) +
                    ") J");
    }
  }
  return out;
}

void require_emitters(const ParsedConfig& config, const std::string& command) {
  if (!config.have_emitters) {
    throw ConfigError("config: command '" + command + "' requires an 'emitters' object");
  }
}

std::vector<int> default_separations() {
  std::vector<int> out(11);
  for (int s = 0; s <= 10; ++s) {
    out[s] = s;
  }
  return out;
}

bhwg::CorrelatorSpec oracle_spec(const ParsedConfig& config, int separation, double g,
                                 int k_grid, double eta, bhwg::DispersionMode mode) {
  bhwg::CorrelatorSpec spec;
  spec.phase = config.phase;
  spec.lattice = config.lattice;
  spec.sf = config.sf;
  spec.mi = config.mi;
  spec.i = separation;
  spec.j = 0;
  spec.g = g;
  spec.k_grid_size = k_grid;
  spec.eta = eta;
  spec.dispersion_mode = mode;
  return spec;
}

std::string relative_error_cell(double closed, double oracle) {
  const double denom = std::max(std::abs(oracle), 1e-12);
  return format_double(std::abs(closed - oracle) / denom);
}

// Scaled deviation |a - b| / (1 + max(|a|, |b|)): absolute for small values,
// relative for large ones, matching how the oracle agreements are certified.
double scaled_deviation(double a, double b) {
  return std::abs(a - b) / (1.0 + std::max(std::abs(a), std::abs(b)));
}

// Least-squares R^2 of a straight-line fit through (x, y).
double linear_fit_r2(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  const double mean_y = sy / double(n);
  const double slope = (double(n) * sxy - sx * sy) / (double(n) * sxx - sx * sx);
  const double intercept = (sy - slope * sx) / double(n);
  double ss_res = 0.0, ss_tot = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double fit = intercept + slope * x[i];
    ss_res += (y[i] - fit) * (y[i] - fit);
    ss_tot += (y[i] - mean_y) * (y[i] - mean_y);
  }
  return 1.0 - ss_res / ss_tot;
}

}  // namespace

int cmd_dispersion(const CliOptions& options) {
  const ParsedConfig config = parse_config_file(options.config_path);
  const ojson block = command_block(config, "dispersion", {"k_points"}, false);
  const int k_points = int_field(block, "dispersion.", "k_points", 256);
  if (k_points < 2) {
    throw ConfigError("config: 'dispersion.k_points' must be at least 2");
  }

  Table table;
  table.name = "dispersion";
  table.diagnostics = phase_diagnostics(config);

  if (config.phase == bhwg::Phase::sf) {
    const auto [low, high] = bhwg::band_edges_sf(config.lattice, config.sf);
    table.diagnostics.push_back("band: [" + format_double(low) + ", " +
                                format_double(high) + "] J");
    table.columns = {{"k", "1/d"}, {"omega", "J"}};
    for (int i = 0; i < k_points; ++i) {
      const double k = kPi * double(i) / double(k_points - 1);
      table.rows.push_back({format_double(k),
                            format_double(bhwg::dispersion_sf(k, config.lattice, config.sf))});
    }
  } else {
    const auto plus = bhwg::band_edges_mi(+1, config.lattice, config.mi);
    const auto minus = bhwg::band_edges_mi(-1, config.lattice, config.mi);
    table.diagnostics.push_back("doublon band: [" + format_double(plus.first) + ", " +
                                format_double(plus.second) + "] J");
    table.diagnostics.push_back("holon band: [" + format_double(minus.first) + ", " +
                                format_double(minus.second) + "] J");
    table.columns = {{"k", "1/d"}, {"eps_plus", "J"}, {"eps_minus", "J"}};
    for (int i = 0; i < k_points; ++i) {
      const double k = kPi * double(i) / double(k_points - 1);
      table.rows.push_back(
          {format_double(k),
           format_double(bhwg::dispersion_mi(k, +1, config.lattice, config.mi)),
           format_double(bhwg::dispersion_mi(k, -1, config.lattice, config.mi))});
    }
  }

  print_diagnostics(table.diagnostics);
  announce(write_table(table, options, config, "dispersion"));
  return 0;
}

namespace {

// |dk/domega| from the analytic band inversion, by a symmetric stencil kept
// strictly inside the band. Returns NaN-free values only for in-band omega.
double dos_from_inversion(double omega, double low, double high,
                          const std::function<double(double)>& k_of_omega,
                          double scale) {
  const double dist = std::min(omega - low, high - omega);
  const double h = std::min(1e-6 * scale, 0.45 * dist);
  const double k_hi = k_of_omega(omega + h);
  const double k_lo = k_of_omega(omega - h);
  return std::abs(k_hi - k_lo) / (2.0 * h) / kPi;
}

struct DosSample {
  std::string value;  // formatted DOS cell
  std::string note;   // "", "band edge", or "gap"
};

DosSample dos_sample(double omega, double low, double high, double grid_step,
                     const std::function<double(double)>& k_of_omega, double scale) {
  if (omega <= low || omega >= high) {
    const bool near_edge =
        std::min(std::abs(omega - low), std::abs(omega - high)) < grid_step;
    return {"0", near_edge ? "band edge" : "gap"};
  }
  const double dist = std::min(omega - low, high - omega);
  const DosSample sample{
      format_double(dos_from_inversion(omega, low, high, k_of_omega, scale)),
      dist < grid_step ? "band edge" : ""};
  return sample;
}

}  // namespace

int cmd_dos(const CliOptions& options) {
  const ParsedConfig config = parse_config_file(options.config_path);
  const ojson block =
      command_block(config, "dos", {"omega_min", "omega_max", "omega_points"}, false);

  Table table;
  table.name = "dos";
  table.diagnostics = phase_diagnostics(config);
  const double scale = std::max(config.lattice.J, 1.0);

  if (config.phase == bhwg::Phase::sf) {
    const auto [low, high] = bhwg::band_edges_sf(config.lattice, config.sf);
    const double omega_min =
        number_field(block, "dos.", "omega_min", low - 0.5 * config.lattice.J);
    const double omega_max =
        number_field(block, "dos.", "omega_max", high + 0.5 * config.lattice.J);
    const int points = int_field(block, "dos.", "omega_points", 201);
    if (points < 2 || !(omega_max > omega_min)) {
      throw ConfigError("config: 'dos' needs omega_max > omega_min and omega_points >= 2");
    }
    table.diagnostics.push_back("band: [" + format_double(low) + ", " +
                                format_double(high) + "] J");
    table.columns = {{"omega", "J"}, {"dos", "1/(J d)"}, {"note", "text"}};
    const double step = (omega_max - omega_min) / double(points - 1);
    const auto invert = [&](double w) { return bhwg::k1d_sf(w, config.lattice, config.sf); };
    for (int i = 0; i < points; ++i) {
      const double omega = omega_min + step * double(i);
      const DosSample sample = dos_sample(omega, low, high, step, invert, scale);
      table.rows.push_back({format_double(omega), sample.value, sample.note});
    }
  } else {
    const auto plus = bhwg::band_edges_mi(+1, config.lattice, config.mi);
    const auto minus = bhwg::band_edges_mi(-1, config.lattice, config.mi);
    const double omega_min = number_field(
        block, "dos.", "omega_min", std::min(plus.first, minus.first) - 0.5 * config.lattice.J);
    const double omega_max =
        number_field(block, "dos.", "omega_max",
                     std::max(plus.second, minus.second) + 0.5 * config.lattice.J);
    const int points = int_field(block, "dos.", "omega_points", 201);
    if (points < 2 || !(omega_max > omega_min)) {
      throw ConfigError("config: 'dos' needs omega_max > omega_min and omega_points >= 2");
    }
    table.diagnostics.push_back("doublon band: [" + format_double(plus.first) + ", " +
                                format_double(plus.second) + "] J");
    table.diagnostics.push_back("holon band: [" + format_double(minus.first) + ", " +
                                format_double(minus.second) + "] J");
    table.columns = {{"omega", "J"},
                     {"dos_plus", "1/(J d)"},
                     {"note_plus", "text"},
                     {"dos_minus", "1/(J d)"},
                     {"note_minus", "text"}};
    const double step = (omega_max - omega_min) / double(points - 1);
    const auto invert_plus = [&](double w) {
      return bhwg::k1d_mi(w, +1, config.lattice, config.mi);
    };
    const auto invert_minus = [&](double w) {
      return bhwg::k1d_mi(w, -1, config.lattice, config.mi);
    };
    for (int i = 0; i < points; ++i) {
      const double omega = omega_min + step * double(i);
      const DosSample sp =
          dos_sample(omega, plus.first, plus.second, step, invert_plus, scale);
      const DosSample sm =
          dos_sample(omega, minus.first, minus.second, step, invert_minus, scale);
      table.rows.push_back(
          {format_double(omega), sp.value, sp.note, sm.value, sm.note});
    }
  }

  print_diagnostics(table.diagnostics);
  announce(write_table(table, options, config, "dos"));
  return 0;
}

int cmd_decay(const CliOptions& options) {
  const ParsedConfig config = parse_config_file(options.config_path);
  require_emitters(config, "decay");
  const ojson block = command_block(
      config, "decay", {"omega", "separations", "oracle", "oracle_k_grid", "oracle_eta"},
      false);
  const double omega =
      number_field(block, "decay.", "omega", config.emitters.omega_e);
  const std::vector<int> separations =
      int_array_field(block, "decay.", "separations", default_separations());
  const bool with_oracle = bool_field(block, "decay.", "oracle", true);
  const int k_grid = int_field(block, "decay.", "oracle_k_grid", 4096);
  const double eta = number_field(block, "decay.", "oracle_eta", 0.02);
  const double g = config.emitters.g;

  Table table;
  table.name = "decay";
  table.diagnostics = phase_diagnostics(config);
  table.columns = {{"separation", "d"}, {"gamma_closed", "J"}};
  if (with_oracle) {
    table.columns.push_back({"gamma_oracle", "J"});
    table.columns.push_back({"rel_error", "1"});
  }
  table.columns.push_back({"note", "text"});

  for (const int s : separations) {
    if (s < 0) {
      throw ConfigError("config: 'decay.separations' entries must be >= 0");
    }
    double closed = 0.0;
    bool in_band = false;
    std::string note;
    if (config.phase == bhwg::Phase::sf) {
      const bhwg::SfResponse resp =
          bhwg::gamma_sf_response(s, 0, omega, config.lattice, config.sf, g);
      closed = resp.gamma;
      in_band = resp.k_1d.has_value();
      if (resp.edge_clamped) {
        note = "band edge clamped";
      } else if (!in_band) {
        note = "out of band";
      }
    } else {
      const bhwg::MiResponse resp =
          bhwg::gamma_mi(s, 0, omega, config.lattice, config.mi, g);
      closed = resp.gamma;
      in_band = resp.chi_plus == 1 || resp.chi_minus == 1;
      if (resp.edge_clamped) {
        note = "band edge clamped";
      } else if (!in_band) {
        note = "in gap";
      } else if (resp.chi_plus == 1 && resp.chi_minus == 1) {
        note = "both bands resonant";
      }
    }

    std::vector<std::string> row = {std::to_string(s), format_double(closed)};
    if (with_oracle) {
      const bhwg::OracleResponse oracle = bhwg::response_quadrature(
          oracle_spec(config, s, g, k_grid, eta, bhwg::DispersionMode::exact), omega);
      row.push_back(format_double(oracle.gamma));
      row.push_back(in_band ? relative_error_cell(closed, oracle.gamma) : "");
    }
    row.push_back(note);
    table.rows.push_back(std::move(row));
  }

  print_diagnostics(table.diagnostics);
  announce(write_table(table, options, config, "decay"));
  return 0;
}

int cmd_coupling(const CliOptions& options) {
  const ParsedConfig config = parse_config_file(options.config_path);
  require_emitters(config, "coupling");
  const ojson block = command_block(
      config, "coupling",
      {"omega", "separations", "oracle", "oracle_k_grid", "oracle_eta", "oracle_dispersion"},
      false);
  const double omega =
      number_field(block, "coupling.", "omega", config.emitters.omega_e);
  const std::vector<int> separations =
      int_array_field(block, "coupling.", "separations", default_separations());
  const bool with_oracle = bool_field(block, "coupling.", "oracle", true);
  const int k_grid = int_field(block, "coupling.", "oracle_k_grid", 4096);
  const double eta = number_field(block, "coupling.", "oracle_eta", 0.004);
  const std::string mode_name =
      string_field(block, "coupling.", "oracle_dispersion", "approximated");
  bhwg::DispersionMode mode;
  if (mode_name == "approximated") {
    mode = bhwg::DispersionMode::approximated;
  } else if (mode_name == "exact") {
    mode = bhwg::DispersionMode::exact;
  } else {
    throw ConfigError(
        "config: 'coupling.oracle_dispersion' must be \"exact\" or \"approximated\"");
  }
  const double g = config.emitters.g;

  Table table;
  table.name = "coupling";
  table.diagnostics = phase_diagnostics(config);
  table.columns = {{"separation", "d"}, {"delta_closed", "J"}};
  if (with_oracle) {
    table.columns.push_back({"delta_oracle", "J"});
    table.columns.push_back({"rel_error", "1"});
  }
  table.columns.push_back({"note", "text"});
  if (with_oracle && mode == bhwg::DispersionMode::exact) {
    table.diagnostics.push_back(
        "note: oracle uses the exact dispersion; the closed form approximates the band, "
        "so small systematic offsets are expected");
  }

  for (const int s : separations) {
    if (s < 0) {
      throw ConfigError("config: 'coupling.separations' entries must be >= 0");
    }
    double closed = std::numeric_limits<double>::quiet_NaN();
    std::string note;
    try {
      if (config.phase == bhwg::Phase::sf) {
        closed = bhwg::delta_sf(s, 0, omega, config.lattice, config.sf, g).delta;
      } else {
        closed = bhwg::delta_mi(s, 0, omega, config.lattice, config.mi, g).delta;
      }
    } catch (const bhwg::PhysicsError&) {
      note = "closed form not valid at this frequency; oracle column is authoritative";
    }

    std::vector<std::string> row = {std::to_string(s), format_double(closed)};
    if (with_oracle) {
      const bhwg::OracleResponse oracle =
          bhwg::response_quadrature(oracle_spec(config, s, g, k_grid, eta, mode), omega);
      row.push_back(format_double(oracle.delta));
      row.push_back(std::isnan(closed) ? "" : relative_error_cell(closed, oracle.delta));
    }
    row.push_back(note);
    table.rows.push_back(std::move(row));
  }

  print_diagnostics(table.diagnostics);
  announce(write_table(table, options, config, "coupling"));
  return 0;
}

int cmd_burst_map(const CliOptions& options) {
  const ParsedConfig config = parse_config_file(options.config_path);
  require_emitters(config, "burst-map");
  const ojson block = command_block(
      config, "burst_map", {"u_min", "u_max", "u_points", "ne_grid"}, true);
  const double u_min = number_field(block, "burst_map.", "u_min", 0.0, true);
  const double u_max = number_field(block, "burst_map.", "u_max", 0.0, true);
  const int u_points = int_field(block, "burst_map.", "u_points", 0, true);
  const std::vector<int> ne_grid = int_array_field(block, "burst_map.", "ne_grid", {});
  if (u_points < 1 || (u_points > 1 && !(u_max > u_min))) {
    throw ConfigError("config: 'burst_map' needs u_points >= 1 and u_max > u_min");
  }
  if (ne_grid.empty()) {
    throw ConfigError("config: 'burst_map.ne_grid' must be a non-empty array");
  }

  std::vector<double> u_grid(u_points);
  for (int i = 0; i < u_points; ++i) {
    u_grid[i] = u_points == 1
                    ? u_min
                    : u_min + (u_max - u_min) * double(i) / double(u_points - 1);
  }

  const bhwg::BurstMapFixed fixed{
      .omega_e = config.emitters.omega_e,
      .omega_c = config.lattice.omega_c,
      .filling = config.phase == bhwg::Phase::sf ? config.sf.n_0
                                                 : double(config.mi.n_bar),
      .gamma_prime = config.emitters.gamma_prime,
      .g = config.emitters.g,
      .J = config.lattice.J,
  };
  const bhwg::BurstMap map =
      bhwg::burst_phase_map(config.phase, u_grid, ne_grid, fixed);

  Table table;
  table.name = "burst_map";
  table.columns = {{"U", "J"},     {"n_e", "1"}, {"state", "text"}, {"k1d", "1/d"},
                   {"gamma_1d", "J"}, {"lhs", "1"}, {"rhs", "1"}};
  const std::string nan_cell = "nan";
  for (std::size_t iu = 0; iu < map.u_grid.size(); ++iu) {
    for (std::size_t in = 0; in < map.ne_grid.size(); ++in) {
      const bhwg::BurstMapCell& cell = map.cells[iu * map.ne_grid.size() + in];
      std::string state;
      switch (cell.state) {
        case bhwg::BurstCellState::burst:
          state = "burst";
          break;
        case bhwg::BurstCellState::no_burst:
          state = "no_burst";
          break;
        case bhwg::BurstCellState::undefined:
          state = "undefined";
          break;
      }
      const bool defined = cell.state != bhwg::BurstCellState::undefined;
      table.rows.push_back({format_double(map.u_grid[iu]),
                            std::to_string(map.ne_grid[in]), state,
                            defined ? format_double(cell.k1d) : nan_cell,
                            defined ? format_double(cell.gamma_1d) : nan_cell,
                            defined ? format_double(cell.criterion.lhs) : nan_cell,
                            defined ? format_double(cell.criterion.rhs) : nan_cell});
    }
  }

  print_diagnostics(table.diagnostics);
  announce(write_table(table, options, config, "burst-map"));
  return 0;
}

int cmd_dynamics(const CliOptions& options) {
  const ParsedConfig config = parse_config_file(options.config_path);
  require_emitters(config, "dynamics");
  const ojson block = command_block(
      config, "dynamics",
      {"t_final", "dt_max", "rtol", "atol", "initial_state", "include_lamb_shift",
       "k_grid_size", "eta", "trace_abort", "burst_margin"},
      true);
  const double t_final = number_field(block, "dynamics.", "t_final", 0.0, true);
  const double dt_max = number_field(block, "dynamics.", "dt_max", 0.0, true);
  if (!(t_final > 0.0) || !(dt_max > 0.0)) {
    throw ConfigError("config: 'dynamics' needs t_final > 0 and dt_max > 0");
  }
  bhwg::EvolveOptions evolve_options;
  evolve_options.rtol = number_field(block, "dynamics.", "rtol", 1e-9);
  evolve_options.atol = number_field(block, "dynamics.", "atol", 1e-12);
  evolve_options.trace_abort = number_field(block, "dynamics.", "trace_abort", 1e-6);
  evolve_options.store_states = false;
  const std::string initial =
      string_field(block, "dynamics.", "initial_state", "fully_excited");
  const double burst_margin = number_field(block, "dynamics.", "burst_margin", 1e-6);

  bhwg::LiouvillianOptions lv_options;
  lv_options.include_lamb_shift =
      bool_field(block, "dynamics.", "include_lamb_shift", true);
  lv_options.k_grid_size = int_field(block, "dynamics.", "k_grid_size", 4096);
  lv_options.eta = number_field(block, "dynamics.", "eta", 0.02);

  const bhwg::EmitterLiouvillian liouvillian = bhwg::build_liouvillian(
      config.phase, config.lattice, config.sf, config.mi, config.emitters, lv_options);

  std::vector<std::string> diagnostics = phase_diagnostics(config);
  collect(diagnostics, liouvillian.diagnostics);
  print_diagnostics(diagnostics);

  const int dim = 1 << liouvillian.n;
  Eigen::MatrixXcd rho0;
  if (initial == "fully_excited") {
    rho0 = bhwg::fully_excited_state(liouvillian.n);
  } else if (initial == "single_excited") {
    rho0 = Eigen::MatrixXcd::Zero(dim, dim);
    rho0(1, 1) = 1.0;  // emitter 0 excited, all others in the ground state
  } else {
    throw ConfigError(
        "config: 'dynamics.initial_state' must be \"fully_excited\" or \"single_excited\"");
  }

  bhwg::Trajectory trajectory;
  try {
    trajectory = bhwg::evolve(liouvillian, rho0, t_final, dt_max, evolve_options);
  } catch (const bhwg::PhysicsError& e) {
    // The integrator reports the last accepted time and step counts in the
    // exception text; persist that alongside the run configuration.
    ojson failure = ojson::object();
    failure["status"] = "integrator_failure";
    failure["error"] = e.what();
    failure["t_final_requested"] = format_double(t_final);
    failure["diagnostics"] = diagnostics;
    announce(write_report("dynamics_error", failure, options, config, "dynamics"));
    throw;
  }

  Table table;
  table.name = "dynamics";
  table.diagnostics = diagnostics;
  table.columns = {{"t", "1/J"},
                   {"population", "1"},
                   {"power", "J"},
                   {"trace_drift", "1"},
                   {"min_eigenvalue", "1"}};
  for (std::size_t i = 0; i < trajectory.times.size(); ++i) {
    table.rows.push_back({format_double(trajectory.times[i]),
                          format_double(trajectory.population[i]),
                          format_double(trajectory.power[i]),
                          format_double(trajectory.trace_drift[i]),
                          format_double(trajectory.min_eigenvalue[i])});
  }
  announce(write_table(table, options, config, "dynamics"));

  const bhwg::BurstDetection burst = bhwg::detect_burst(trajectory, burst_margin);
  double max_drift = 0.0;
  double min_eig = 0.0;
  for (std::size_t i = 0; i < trajectory.times.size(); ++i) {
    max_drift = std::max(max_drift, trajectory.trace_drift[i]);
    min_eig = std::min(min_eig, trajectory.min_eigenvalue[i]);
  }
  ojson verdict = ojson::object();
  verdict["burst"] = burst.burst;
  verdict["peak_time"] = format_double(burst.peak_time);
  verdict["peak_power"] = format_double(burst.peak_power);
  verdict["initial_power"] = format_double(burst.initial_power);
  verdict["initial_slope"] = format_double(burst.initial_slope);
  verdict["slope_positive"] = burst.slope_positive;
  verdict["initial_power_slope_total"] = format_double(trajectory.initial_power_slope);
  verdict["gamma_prime"] = format_double(liouvillian.gamma_prime);
  verdict["steps_accepted"] = trajectory.steps_accepted;
  verdict["steps_rejected"] = trajectory.steps_rejected;
  verdict["max_trace_drift"] = format_double(max_drift);
  verdict["min_eigenvalue"] = format_double(min_eig);
  verdict["diagnostics"] = diagnostics;
  announce(write_report("dynamics_burst", verdict, options, config, "dynamics"));
  return 0;
}

namespace {

struct ValidateCheck {
  std::string name;
  double measured{0.0};
  double tolerance{0.0};
};

void run_sf_checks(std::vector<ValidateCheck>& checks) {
  using namespace bhwg;
  {  // Bogoliubov identities on a dense momentum grid.
    const LatticeParams lp{.omega_c = 1.5, .U = 0.5};
    const SfParams sf{1.0};
    double worst = 0.0;
    for (int i = 1; i < 512; ++i) {
      const double k = kPi * double(i) / 512.0;
      const SfMode mode = sf_mode(k, lp, sf);
      worst = std::max(worst, std::abs(mode.u_k * mode.u_k - mode.v_k * mode.v_k - 1.0));
      worst = std::max(worst, std::abs(mode.u_k * mode.v_k -
                                       lp.U * sf.n_0 / (2.0 * mode.omega_k)));
      worst = std::max(worst, std::abs(mode.u_k * mode.u_k + mode.v_k * mode.v_k -
                                       mode.f_k / mode.omega_k));
    }
    checks.push_back({"sf_bogoliubov_identities", worst, 1e-10});
  }
  {  // Dispersion inversion round trip strictly inside the band.
    const LatticeParams lp{.omega_c = 1.5, .U = 0.5};
    const SfParams sf{1.0};
    const auto [low, high] = band_edges_sf(lp, sf);
    double worst = 0.0;
    for (int i = 0; i < 64; ++i) {
      const double omega = low + (double(i) + 0.5) / 64.0 * (high - low);
      worst = std::max(worst,
                       std::abs(dispersion_sf(k1d_sf(omega, lp, sf), lp, sf) - omega));
    }
    checks.push_back({"sf_dispersion_roundtrip", worst, 1e-8});
  }
  {  // Zero-interaction limit: on-site decay reduces to g^2 / J at band center.
    const LatticeParams lp{.omega_c = 2.0, .U = 0.0};
    const SfParams sf{1.0};
    const double g = 0.1;
    const double gamma = gamma_sf(0, 0, 2.0, lp, sf, g);
    checks.push_back(
        {"sf_zero_interaction_decay", std::abs(gamma - g * g / lp.J), 1e-10});
  }
  {  // In-band decay against the exact-dispersion quadrature.
    const LatticeParams lp{.omega_c = 2.2, .U = 0.5};
    const SfParams sf{1.0};
    const auto [low, high] = band_edges_sf(lp, sf);
    const double omega = low + 0.5 * (high - low);
    double worst = 0.0;
    for (const int s : {0, 3}) {
      CorrelatorSpec spec;
      spec.phase = Phase::sf;
      spec.lattice = lp;
      spec.sf = sf;
      spec.i = s;
      const OracleResponse oracle = response_quadrature(spec, omega);
      const double closed = gamma_sf(s, 0, omega, lp, sf, spec.g);
      worst = std::max(worst, scaled_deviation(closed, oracle.gamma));
    }
    checks.push_back({"sf_decay_oracle", worst, 1e-3});
  }
  {  // Bandgap coupling against the matched-approximation quadrature.
    const LatticeParams lp{.omega_c = 2.0, .U = 0.5};
    const SfParams sf{1.0};
    const double omega = 5.5;
    double worst = 0.0;
    for (const int s : {1, 5}) {
      CorrelatorSpec spec;
      spec.phase = Phase::sf;
      spec.lattice = lp;
      spec.sf = sf;
      spec.i = s;
      spec.eta = 0.004;
      spec.dispersion_mode = DispersionMode::approximated;
      const OracleResponse oracle = response_quadrature(spec, omega);
      const double closed = delta_sf(s, 0, omega, lp, sf, spec.g).delta;
      worst = std::max(worst, scaled_deviation(closed, oracle.delta));
    }
    checks.push_back({"sf_coupling_oracle", worst, 1e-6});
  }
  {  // Distant coupling saturates at the condensate plateau.
    const LatticeParams lp{.omega_c = 1.5, .U = 0.5};
    const SfParams sf{1.0};
    const double g = 0.1;
    const double omega = band_edges_sf(lp, sf).second + 0.2;
    const SfResponse resp = delta_sf(40, 0, omega, lp, sf, g);
    checks.push_back({"sf_plateau_saturation",
                      std::abs(resp.delta - resp.plateau) / std::abs(resp.plateau),
                      1e-3});
  }
}

void run_mi_checks(std::vector<ValidateCheck>& checks) {
  using namespace bhwg;
  const LatticeParams lp{.omega_c = 10.0, .U = 3.0};
  const MiParams mi{1};
  {  // Fermionic Bogoliubov identities on a dense momentum grid.
    double worst = 0.0;
    for (int i = 1; i < 512; ++i) {
      const double k = kPi * double(i) / 512.0;
      const MiMode mode = mi_mode(k, lp, mi);
      worst = std::max(worst,
                       std::abs(mode.u * mode.u + mode.v_im * mode.v_im - 1.0));
      worst = std::max(worst, std::abs(mode.u * mode.u - mode.v_im * mode.v_im -
                                       mode.varsigma / (2.0 * mode.eta)));
      worst = std::max(worst, std::abs(2.0 * mode.u * mode.v_im -
                                       std::abs(mode.delta_pair) / mode.eta));
    }
    checks.push_back({"mi_bogoliubov_identities", worst, 1e-10});
  }
  {  // Round trips on both hybridized bands.
    double worst = 0.0;
    for (const int sigma : {+1, -1}) {
      const auto [low, high] = band_edges_mi(sigma, lp, mi);
      for (int i = 0; i < 64; ++i) {
        const double omega = low + (double(i) + 0.5) / 64.0 * (high - low);
        worst = std::max(
            worst, std::abs(dispersion_mi(k1d_mi(omega, sigma, lp, mi), sigma, lp, mi) -
                            omega));
      }
    }
    checks.push_back({"mi_dispersion_roundtrip", worst, 1e-8});
  }
  {  // In-band decay against the exact-dispersion quadrature.
    double worst = 0.0;
    const std::vector<std::pair<int, double>> probes = {{0, 13.0}, {3, 10.5}};
    for (const auto& [s, omega] : probes) {
      CorrelatorSpec spec;
      spec.phase = Phase::mi;
      spec.lattice = lp;
      spec.mi = mi;
      spec.i = s;
      const OracleResponse oracle = response_quadrature(spec, omega);
      const double closed = gamma_mi(s, 0, omega, lp, mi, spec.g).gamma;
      worst = std::max(worst, scaled_deviation(closed, oracle.gamma));
    }
    checks.push_back({"mi_decay_oracle", worst, 1e-3});
  }
  {  // Upper-gap coupling against the matched-approximation quadrature.
    const double omega = band_edges_mi(+1, lp, mi).second + 0.5;
    double worst = 0.0;
    for (const int s : {1, 5}) {
      CorrelatorSpec spec;
      spec.phase = Phase::mi;
      spec.lattice = lp;
      spec.mi = mi;
      spec.i = s;
      spec.eta = 0.004;
      spec.dispersion_mode = DispersionMode::approximated;
      const OracleResponse oracle = response_quadrature(spec, omega);
      const double closed = delta_mi(s, 0, omega, lp, mi, spec.g).delta;
      worst = std::max(worst, scaled_deviation(closed, oracle.delta));
    }
    checks.push_back({"mi_coupling_oracle", worst, 1e-6});
  }
  {  // Gap couplings decay exponentially: log-linear fit beyond nearest pairs.
    const LatticeParams lp_fit{.omega_c = 10.0, .U = 2.0};
    const double omega = band_edges_mi(+1, lp_fit, mi).second + 0.2;
    std::vector<double> xs, ys;
    for (int s = 2; s <= 8; ++s) {
      xs.push_back(double(s));
      ys.push_back(std::log(std::abs(delta_mi(s, 0, omega, lp_fit, mi, 0.1).delta)));
    }
    checks.push_back({"mi_exponential_tail", 1.0 - linear_fit_r2(xs, ys), 1e-3});
  }
}

void run_ed_checks(std::vector<ValidateCheck>& checks) {
  using namespace bhwg;
  // Zero hopping: every many-body energy is a lattice-independent constant.
  const LatticeParams lp{.omega_c = 10.0, .J = 0.0, .U = 6.0};
  const MiParams mi{1};
  const ExcitationSpectrum spec = excitation_spectrum(lp, mi, 6);
  double worst = std::abs(spec.ground_energy - 60.0);
  for (std::size_t m = 0; m < spec.momenta.size(); ++m) {
    worst = std::max(worst, std::abs(spec.doublon_energies[m] - 16.0));
    worst = std::max(worst, std::abs(spec.holon_energies[m] - 10.0));
  }
  checks.push_back({"ed_atomic_limit", worst, 1e-12});
}

void run_dynamics_checks(std::vector<ValidateCheck>& checks) {
  using namespace bhwg;
  const double gamma = 0.8;
  {  // Single emitter decays exponentially with certified trace and positivity.
    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(1, 1);
    Eigen::MatrixXd gm(1, 1);
    gm << gamma;
    const EmitterLiouvillian lv = make_liouvillian(h, gm, 0.0);
    EvolveOptions opts;
    opts.store_states = false;
    const Trajectory traj = evolve(lv, fully_excited_state(1), 4.0, 0.1, opts);
    double pop_dev = 0.0, drift = 0.0, negativity = 0.0;
    for (std::size_t i = 0; i < traj.times.size(); ++i) {
      pop_dev = std::max(pop_dev, std::abs(traj.population[i] -
                                           std::exp(-gamma * traj.times[i])));
      drift = std::max(drift, traj.trace_drift[i]);
      negativity = std::max(negativity, -traj.min_eigenvalue[i]);
    }
    checks.push_back({"dynamics_single_emitter_decay", pop_dev, 1e-6});
    checks.push_back({"dynamics_trace_drift", drift, 1e-8});
    checks.push_back({"dynamics_positivity", negativity, 1e-8});
  }
  {  // Two-emitter Dicke point sits exactly on the burst threshold: zero slope.
    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(2, 2);
    Eigen::MatrixXd gm(2, 2);
    gm << gamma, gamma, gamma, gamma;
    const EmitterLiouvillian lv = make_liouvillian(h, gm, 0.0);
    EvolveOptions opts;
    opts.store_states = false;
    const Trajectory traj = evolve(lv, fully_excited_state(2), 2.0, 0.1, opts);
    checks.push_back(
        {"dynamics_dicke_threshold_slope", std::abs(traj.initial_guided_power_slope),
         1e-10});
  }
  {  // Decoupled pair never bursts.
    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(2, 2);
    Eigen::MatrixXd gm = gamma * Eigen::MatrixXd::Identity(2, 2);
    const EmitterLiouvillian lv = make_liouvillian(h, gm, 0.0);
    EvolveOptions opts;
    opts.store_states = false;
    const Trajectory traj = evolve(lv, fully_excited_state(2), 4.0, 0.1, opts);
    const BurstDetection burst = detect_burst(traj);
    checks.push_back({"dynamics_independent_pair_no_burst",
                      (burst.burst || burst.slope_positive) ? 1.0 : 0.0, 0.5});
  }
}

}  // namespace

int cmd_validate(const CliOptions& options) {
  const ParsedConfig config = parse_config_file(options.config_path);
  const ojson block = command_block(config, "validate", {"suite"}, false);
  const std::string suite = string_field(block, "validate.", "suite", "all");
  const std::vector<std::string> known = {"all", "sf", "mi", "ed", "dynamics"};
  if (std::find(known.begin(), known.end(), suite) == known.end()) {
    throw ConfigError(
        "config: 'validate.suite' must be one of all, sf, mi, ed, dynamics");
  }

  std::vector<ValidateCheck> checks;
  if (suite == "all" || suite == "sf") {
    run_sf_checks(checks);
  }
  if (suite == "all" || suite == "mi") {
    run_mi_checks(checks);
  }
  if (suite == "all" || suite == "ed") {
    run_ed_checks(checks);
  }
  if (suite == "all" || suite == "dynamics") {
    run_dynamics_checks(checks);
  }

  Table table;
  table.name = "validate";
  table.columns = {
      {"check", "text"}, {"measured", "1"}, {"tolerance", "1"}, {"status", "text"}};
  int failures = 0;
  for (const auto& check : checks) {
    const bool pass = check.measured <= check.tolerance;
    if (!pass) {
      ++failures;
    }
    table.rows.push_back({check.name, format_double(check.measured),
                          format_double(check.tolerance), pass ? "pass" : "fail"});
    std::cout << (pass ? "pass  " : "FAIL  ") << check.name
              << "  measured=" << format_double(check.measured)
              << "  tolerance=" << format_double(check.tolerance) << "\n";
  }
  announce(write_table(table, options, config, "validate"));
  if (failures > 0) {
    std::cerr << "validate: " << failures << " of " << checks.size()
              << " checks failed\n";
    return 3;
  }
  std::cout << "validate: all " << checks.size() << " checks passed\n";
  return 0;
}

}  // namespace bhwg_cli
