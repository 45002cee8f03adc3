// config.cpp — config file loading, schema validation, and typed field access.
#include "cli.hpp"

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace bhwg_cli {

namespace {

std::string read_file_bytes(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ConfigError("config: cannot open file '" + path + "'");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t hash = 14695981039346656037ull;
  for (unsigned char c : bytes) {
    hash ^= static_cast<std::uint64_t>(c);
    hash *= 1099511628211ull;
  }
  char out[17];
  std::snprintf(out, sizeof(out), "%016llx", static_cast<unsigned long long>(hash));
  return std::string(out);
}

void reject_unknown(const ojson& object, const std::string& path,
                    const std::vector<std::string>& allowed) {
  const std::set<std::string> keys(allowed.begin(), allowed.end());
  for (const auto& item : object.items()) {
    if (keys.count(item.key()) == 0) {
      throw ConfigError("config: unknown key '" + path + item.key() + "'");
    }
  }
}

const ojson* find_member(const ojson& object, const std::string& key) {
  auto it = object.find(key);
  return it == object.end() ? nullptr : &*it;
}

double as_number(const ojson& value, const std::string& where) {
  if (!value.is_number()) {
    throw ConfigError("config: '" + where + "' must be a number");
  }
  return value.get<double>();
}

int as_int(const ojson& value, const std::string& where) {
  if (!value.is_number_integer()) {
    throw ConfigError("config: '" + where + "' must be an integer");
  }
  return value.get<int>();
}

}  // namespace

double number_field(const ojson& block, const std::string& path, const std::string& key,
                    double fallback, bool required) {
  const ojson* value = find_member(block, key);
  if (value == nullptr) {
    if (required) {
      throw ConfigError("config: missing required key '" + path + key + "'");
    }
    return fallback;
  }
  return as_number(*value, path + key);
}

int int_field(const ojson& block, const std::string& path, const std::string& key,
              int fallback, bool required) {
  const ojson* value = find_member(block, key);
  if (value == nullptr) {
    if (required) {
      throw ConfigError("config: missing required key '" + path + key + "'");
    }
    return fallback;
  }
  return as_int(*value, path + key);
}

bool bool_field(const ojson& block, const std::string& path, const std::string& key,
                bool fallback) {
  const ojson* value = find_member(block, key);
  if (value == nullptr) {
    return fallback;
  }
  if (!value->is_boolean()) {
    throw ConfigError("config: '" + path + key + "' must be a boolean");
  }
  return value->get<bool>();
}

std::string string_field(const ojson& block, const std::string& path,
                         const std::string& key, const std::string& fallback) {
  const ojson* value = find_member(block, key);
  if (value == nullptr) {
    return fallback;
  }
  if (!value->is_string()) {
    throw ConfigError("config: '" + path + key + "' must be a string");
  }
  return value->get<std::string>();
}

std::vector<int> int_array_field(const ojson& block, const std::string& path,
                                 const std::string& key, const std::vector<int>& fallback) {
  const ojson* value = find_member(block, key);
  if (value == nullptr) {
    return fallback;
  }
  if (!value->is_array()) {
    throw ConfigError("config: '" + path + key + "' must be an array of integers");
  }
  std::vector<int> out;
  out.reserve(value->size());
  for (std::size_t i = 0; i < value->size(); ++i) {
    out.push_back(as_int((*value)[i], path + key + "[" + std::to_string(i) + "]"));
  }
  return out;
}

ParsedConfig parse_config_file(const std::string& path) {
  const std::string bytes = read_file_bytes(path);

  ojson root;
  try {
    root = ojson::parse(bytes);
  } catch (const nlohmann::json::parse_error& e) {
    // parse_error messages carry byte offsets and line/column diagnostics.
    throw ConfigError(std::string("config: ") + e.what());
  }
  if (!root.is_object()) {
    throw ConfigError("config: top level must be a JSON object");
  }

  const std::vector<std::string> command_blocks = {
      "dispersion", "dos", "decay", "coupling", "burst_map", "dynamics", "validate"};
  std::vector<std::string> top_allowed = {"phase", "lattice", "sf", "mi", "emitters"};
  top_allowed.insert(top_allowed.end(), command_blocks.begin(), command_blocks.end());
  reject_unknown(root, "", top_allowed);

  ParsedConfig config;
  config.config_hash = fnv1a_hex(bytes);

  if (find_member(root, "phase") == nullptr) {
    throw ConfigError("config: missing required key 'phase'");
  }
  const std::string phase = string_field(root, "", "phase", "");
  if (phase == "sf") {
    config.phase = bhwg::Phase::sf;
  } else if (phase == "mi") {
    config.phase = bhwg::Phase::mi;
  } else {
    throw ConfigError("config: 'phase' must be \"sf\" or \"mi\", got \"" + phase + "\"");
  }

  const ojson* lattice = find_member(root, "lattice");
  if (lattice == nullptr || !lattice->is_object()) {
    throw ConfigError("config: missing required object 'lattice'");
  }
  reject_unknown(*lattice, "lattice.", {"omega_c", "J", "U", "N_p"});
  config.lattice = bhwg::LatticeParams{
      .omega_c = number_field(*lattice, "lattice.", "omega_c", 0.0, true),
      .J = number_field(*lattice, "lattice.", "J", 1.0),
      .U = number_field(*lattice, "lattice.", "U", 0.0),
      .N_p = int_field(*lattice, "lattice.", "N_p", 512),
  };

  if (const ojson* sf = find_member(root, "sf")) {
    if (!sf->is_object()) {
      throw ConfigError("config: 'sf' must be an object");
    }
    reject_unknown(*sf, "sf.", {"n_0"});
    config.sf = bhwg::SfParams{.n_0 = number_field(*sf, "sf.", "n_0", 1.0)};
  }

  if (const ojson* mi = find_member(root, "mi")) {
    if (!mi->is_object()) {
      throw ConfigError("config: 'mi' must be an object");
    }
    reject_unknown(*mi, "mi.", {"n_bar"});
    config.mi = bhwg::MiParams{.n_bar = int_field(*mi, "mi.", "n_bar", 1)};
  }

  if (const ojson* emitters = find_member(root, "emitters")) {
    if (!emitters->is_object()) {
      throw ConfigError("config: 'emitters' must be an object");
    }
    reject_unknown(*emitters, "emitters.", {"positions", "omega_e", "g", "gamma_prime"});
    config.emitters = bhwg::EmitterArray{
        .positions = int_array_field(*emitters, "emitters.", "positions", {0}),
        .omega_e = number_field(*emitters, "emitters.", "omega_e", 0.0, true),
        .g = number_field(*emitters, "emitters.", "g", 0.1),
        .gamma_prime = number_field(*emitters, "emitters.", "gamma_prime", 0.0),
    };
    config.have_emitters = true;
  }

  config.blocks = ojson::object();
  for (const std::string& name : command_blocks) {
    if (const ojson* block = find_member(root, name)) {
      if (!block->is_object()) {
        throw ConfigError("config: '" + name + "' must be an object");
      }
      config.blocks[name] = *block;
    }
  }

  // Structural validation of the shared physics blocks happens here so every
  // command sees the same failure mode (exit code 1, not a deep throw).
  try {
    if (config.have_emitters) {
      bhwg::validate(config.lattice, config.emitters);
    } else {
      bhwg::validate(config.lattice);
    }
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }

  return config;
}

ojson command_block(const ParsedConfig& config, const std::string& name,
                    const std::vector<std::string>& allowed, bool required) {
  auto it = config.blocks.find(name);
  if (it == config.blocks.end()) {
    if (required) {
      throw ConfigError("config: missing required object '" + name + "'");
    }
    return ojson::object();
  }
  reject_unknown(*it, name + ".", allowed);
  return *it;
}

}  // namespace bhwg_cli
