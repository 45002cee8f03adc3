// output.cpp — deterministic CSV and JSON writers for command results.
#include "cli.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#ifndef BHWG_GIT_REVISION
#define BHWG_GIT_REVISION "unknown"
#endif

namespace bhwg_cli {

namespace {

// Quotes a CSV cell only when the content requires it, so numeric cells stay
// byte-stable and notes with commas stay parseable.
std::string csv_escape(const std::string& cell) {
  if (cell.find_first_of(",\"\n") == std::string::npos) {
    return cell;
  }
  std::string quoted = "\"";
  for (char c : cell) {
    if (c == '"') {
      quoted += '"';
    }
    quoted += c;
  }
  quoted += '"';
  return quoted;
}

std::filesystem::path prepare_out_dir(const CliOptions& options) {
  std::filesystem::path dir(options.out_dir.empty() ? "." : options.out_dir);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) {
    throw ConfigError("output: cannot create directory '" + dir.string() + "': " +
                      ec.message());
  }
  return dir;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw ConfigError("output: cannot open '" + path.string() + "' for writing");
  }
  out << text;
}

ojson metadata(const ParsedConfig& config, const std::string& command) {
  ojson meta = ojson::object();
  meta["command"] = command;
  meta["git_revision"] = BHWG_GIT_REVISION;
  meta["config_hash"] = "fnv1a-" + config.config_hash;
  return meta;
}

}  // namespace

std::string format_double(double value) {
  if (std::isnan(value)) {
    return "nan";
  }
  if (std::isinf(value)) {
    return value > 0 ? "inf" : "-inf";
  }
  char out[32];
  std::snprintf(out, sizeof(out), "%.12g", value);
  // Normalize the signed zero so algebraically zero cells are byte-identical.
  if (std::string(out) == "-0") {
    return "0";
  }
  return std::string(out);
}

std::string write_table(const Table& table, const CliOptions& options,
                        const ParsedConfig& config, const std::string& command) {
  const std::filesystem::path dir = prepare_out_dir(options);

  if (options.format == "csv") {
    std::string text;
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
      if (c > 0) {
        text += ',';
      }
      text += csv_escape(table.columns[c].name + "[" + table.columns[c].unit + "]");
    }
    text += '\n';
    for (const auto& row : table.rows) {
      for (std::size_t c = 0; c < row.size(); ++c) {
        if (c > 0) {
          text += ',';
        }
        text += csv_escape(row[c]);
      }
      text += '\n';
    }
    const std::filesystem::path path = dir / (table.name + ".csv");
    write_text(path, text);
    return path.string();
  }

  ojson payload = metadata(config, command);
  ojson columns = ojson::array();
  for (const auto& column : table.columns) {
    ojson entry = ojson::object();
    entry["name"] = column.name;
    entry["unit"] = column.unit;
    columns.push_back(entry);
  }
  payload["columns"] = columns;
  ojson rows = ojson::array();
  for (const auto& row : table.rows) {
    ojson cells = ojson::array();
    for (const auto& cell : row) {
      cells.push_back(cell);
    }
    rows.push_back(cells);
  }
  payload["rows"] = rows;
  payload["diagnostics"] = table.diagnostics;

  const std::filesystem::path path = dir / (table.name + ".json");
  write_text(path, payload.dump(2) + "\n");
  return path.string();
}

std::string write_report(const std::string& stem, const ojson& payload,
                         const CliOptions& options, const ParsedConfig& config,
                         const std::string& command) {
  const std::filesystem::path dir = prepare_out_dir(options);
  ojson full = metadata(config, command);
  for (const auto& item : payload.items()) {
    full[item.key()] = item.value();
  }
  const std::filesystem::path path = dir / (stem + ".json");
  write_text(path, full.dump(2) + "\n");
  return path.string();
}

}  // namespace bhwg_cli
