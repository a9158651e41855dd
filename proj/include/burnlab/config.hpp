#pragma once

#include <cstdlib>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "burnlab/presentation.hpp"

namespace burnlab {

inline constexpr const char* kConfigEnv = "BURNLAB_CONFIG";

struct SessionConfig {
  unsigned m = 1;
  Params params;
  Budget budget;
  std::optional<std::uint64_t> seed;
  std::string output_dir = ".";
  std::string format = "csv";  // or "json"
  std::size_t expansion_cap = kDefaultExpansionCap;
  bool allow_small_k = false;

  OracleOptions oracle_options() const {
    OracleOptions o;
    o.budget = budget;
    return o;
  }
  std::uint64_t require_seed() const {
    if (!seed) throw InputError("a seed is required for sampling commands");
    return *seed;
  }
};

// Parses without validating, so that flag overrides can be applied first.
inline SessionConfig parse_config(const nlohmann::json& j, SessionConfig c = {}) {
  if (!j.is_object()) throw InputError("config must be a JSON object");
  try {
    for (auto& [key, v] : j.items()) {
      if (key == "m") c.m = v.get<unsigned>();
      else if (key == "params") c.params = params_from_json(v, c.params);
      else if (key == "seed") c.seed = v.get<std::uint64_t>();
      else if (key == "output_dir") c.output_dir = v.get<std::string>();
      else if (key == "format") c.format = v.get<std::string>();
      else if (key == "expansion_cap") c.expansion_cap = v.get<std::size_t>();
      else if (key == "allow_small_k") c.allow_small_k = v.get<bool>();
      else if (key == "budget") {
        for (auto& [bk, bv] : v.items()) {
          if (bk == "max_ball_radius") c.budget.max_ball_radius = bv.get<std::size_t>();
          else if (bk == "max_relator_applications") c.budget.max_relator_applications = bv.get<std::size_t>();
          else if (bk == "max_conjugator_length") c.budget.max_conjugator_length = bv.get<std::size_t>();
          else if (bk == "time_cap_seconds") c.budget.time_cap_seconds = bv.get<double>();
          else throw InputError("unknown budget key \"" + bk + "\"");
        }
      } else {
        throw InputError("unknown config key \"" + key + "\"");
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("config: ") + e.what());
  }
  return c;
}

// Raises the first violated constraint, each with its own message.
inline void validate_config(const SessionConfig& c) {
  if (c.format != "csv" && c.format != "json") throw InputError("output format must be csv or json");
  auto check = check_params(c.params, c.allow_small_k);
  if (!check.ok()) throw InputError("invalid parameters: " + check.errors.front().second);
}

inline nlohmann::json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(path + ": " + e.what());
  }
}

// The path argument wins over the environment; no path at all gives defaults.
inline SessionConfig load_config(std::optional<std::string> path = std::nullopt, bool validate = true) {
  if (!path)
    if (const char* env = std::getenv(kConfigEnv); env && *env) path = env;
  SessionConfig c = path ? parse_config(read_json_file(*path)) : SessionConfig{};
  if (validate) validate_config(c);
  return c;
}

}  // namespace burnlab
