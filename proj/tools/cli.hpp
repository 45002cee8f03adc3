// cli.hpp — shared plumbing for the command-line tool: parsed configuration,
// deterministic table export, and the subcommand entry points.
#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "bhwg/params.hpp"

namespace bhwg_cli {

using ojson = nlohmann::ordered_json;

/// Configuration-layer failure: parse errors, schema violations, unknown keys,
/// missing required blocks. Mapped to exit code 1.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CliOptions {
  std::string config_path{};
  std::string out_dir{"."};
  std::string format{"csv"};  // csv | json
  int threads{1};
};

/// Config file contents after shared-block validation. Command blocks stay raw
/// and are schema-checked by the command that reads them.
struct ParsedConfig {
  bhwg::Phase phase{bhwg::Phase::sf};
  bhwg::LatticeParams lattice{};
  bhwg::SfParams sf{};
  bhwg::MiParams mi{1};
  bhwg::EmitterArray emitters{};
  bool have_emitters{false};
  ojson blocks{};           // command-specific blocks keyed by name
  std::string config_hash;  // fnv1a-64 of the raw file bytes
};

ParsedConfig parse_config_file(const std::string& path);

/// Returns the named command block ({} when absent) after rejecting keys
/// outside the allowed list.
ojson command_block(const ParsedConfig& config, const std::string& name,
                    const std::vector<std::string>& allowed, bool required);

double number_field(const ojson& block, const std::string& path, const std::string& key,
                    double fallback, bool required = false);
int int_field(const ojson& block, const std::string& path, const std::string& key,
              int fallback, bool required = false);
bool bool_field(const ojson& block, const std::string& path, const std::string& key,
                bool fallback);
std::string string_field(const ojson& block, const std::string& path,
                         const std::string& key, const std::string& fallback);
std::vector<int> int_array_field(const ojson& block, const std::string& path,
                                 const std::string& key, const std::vector<int>& fallback);

/// One exported table. Cells are preformatted strings so CSV and JSON carry
/// byte-identical values.
struct Column {
  std::string name;
  std::string unit;  // "1" marks a dimensionless column
};

struct Table {
  std::string name;  // output file stem
  std::vector<Column> columns;
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> diagnostics;
};

std::string format_double(double value);

/// Writes table.name + ".csv" or ".json" under options.out_dir depending on
/// options.format. The JSON mirror wraps the same cells with command name,
/// source revision, and config hash. Returns the written path.
std::string write_table(const Table& table, const CliOptions& options,
                        const ParsedConfig& config, const std::string& command);

/// Writes a standalone JSON report (always JSON, regardless of format).
std::string write_report(const std::string& stem, const ojson& payload,
                         const CliOptions& options, const ParsedConfig& config,
                         const std::string& command);

int cmd_dispersion(const CliOptions& options);
int cmd_dos(const CliOptions& options);
int cmd_decay(const CliOptions& options);
int cmd_coupling(const CliOptions& options);
int cmd_burst_map(const CliOptions& options);
int cmd_dynamics(const CliOptions& options);
int cmd_validate(const CliOptions& options);

}  // namespace bhwg_cli
