// main.cpp — argument parsing, subcommand dispatch, and exit-code mapping.
#include <functional>
#include <iostream>
#include <map>
#include <stdexcept>
#include <string>

#include <Eigen/Core>

#include "CLI11.hpp"

#include "bhwg/errors.hpp"

#include "cli.hpp"

#ifndef BHWG_GIT_REVISION
#define BHWG_GIT_REVISION "unknown"
#endif

namespace {

void add_common_options(CLI::App* sub, bhwg_cli::CliOptions& options) {
  sub->add_option("--config", options.config_path, "Path to the JSON run configuration")
      ->required();
  sub->add_option("--out", options.out_dir, "Output directory (created if missing)");
  sub->add_option("--format", options.format, "Table format: csv (default) or json")
      ->check(CLI::IsMember({"csv", "json"}));
  sub->add_option("--threads", options.threads, "Worker threads for linear algebra")
      ->check(CLI::PositiveNumber);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum emitters coupled to a Bose-Hubbard photonic waveguide"};
  app.set_version_flag("--version", std::string("revision ") + BHWG_GIT_REVISION);
  app.require_subcommand(1);

  bhwg_cli::CliOptions options;
  using Handler = std::function<int(const bhwg_cli::CliOptions&)>;
  std::map<std::string, Handler> handlers = {
      {"dispersion", bhwg_cli::cmd_dispersion},
      {"dos", bhwg_cli::cmd_dos},
      {"decay", bhwg_cli::cmd_decay},
      {"coupling", bhwg_cli::cmd_coupling},
      {"burst-map", bhwg_cli::cmd_burst_map},
      {"dynamics", bhwg_cli::cmd_dynamics},
      {"validate", bhwg_cli::cmd_validate},
  };

  const std::map<std::string, std::string> descriptions = {
      {"dispersion", "Quasiparticle band tables over momentum"},
      {"dos", "Density of states from the analytic band inversions"},
      {"decay", "Collective decay versus separation, with quadrature oracle"},
      {"coupling", "Coherent coupling versus separation, with quadrature oracle"},
      {"burst-map", "Superradiant-burst phase map over interaction and emitter number"},
      {"dynamics", "Lindblad trajectory and burst verdict for an emitter array"},
      {"validate", "Invariant suite: identities, round trips, oracle agreements"},
  };
  for (const auto& [name, handler] : handlers) {
    CLI::App* sub = app.add_subcommand(name, descriptions.at(name));
    add_common_options(sub, options);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      return app.exit(e);  // --help or --version
    }
    app.exit(e);  // prints the parse diagnostic
    return 1;    // malformed invocation is a configuration error
  }

  Eigen::setNbThreads(options.threads);

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    return handlers.at(command)(options);
  } catch (const bhwg_cli::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const bhwg::PhysicsError& e) {
    std::cerr << "physics error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
}
