#include "mole/config.hpp"

#include <cmath>
#include <functional>
#include <istream>

namespace mole {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double to_real(const std::string& key, const std::string& text) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used == text.size() && std::isfinite(v)) return v;
  } catch (const std::exception&) {
  }
  throw MoleError(ErrorCode::InvalidConfig, "config '" + key + "': bad number '" + text + "'");
}

std::size_t to_count(const std::string& key, const std::string& text) {
  const double v = to_real(key, text);
  if (v < 0 || v != std::floor(v)) {
    throw MoleError(ErrorCode::InvalidConfig,
                    "config '" + key + "': expected a non-negative integer");
  }
  return static_cast<std::size_t>(v);
}

bool to_bool(const std::string& key, const std::string& text) {
  if (text == "1" || text == "true" || text == "yes" || text == "on") return true;
  if (text == "0" || text == "false" || text == "no" || text == "off") return false;
  throw MoleError(ErrorCode::InvalidConfig, "config '" + key + "': expected a boolean");
}

using Setter = std::function<void(const std::string&, const std::string&, MoleConfig&,
                                  MogsaConfig&)>;

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table = {
      {"descent.crit_gamma", [](auto& k, auto& v, MoleConfig& m, MogsaConfig&) { m.descent.crit_gamma = to_real(k, v); }},
      {"descent.alpha_min", [](auto& k, auto& v, MoleConfig& m, MogsaConfig&) { m.descent.alpha_min = to_real(k, v); }},
      {"descent.alpha_max", [](auto& k, auto& v, MoleConfig& m, MogsaConfig&) { m.descent.alpha_max = to_real(k, v); }},
      {"descent.lambda", [](auto& k, auto& v, MoleConfig& m, MogsaConfig&) { m.descent.lambda = to_real(k, v); }},
      {"descent.beta", [](auto& k, auto& v, MoleConfig& m, MogsaConfig&) { m.descent.beta = to_real(k, v); }},
      {"descent.history", [](auto& k, auto& v, MoleConfig& m, MogsaConfig&) { m.descent.history = to_count(k, v); }},
      {"descent.max_iter", [](auto& k, auto& v, MoleConfig& m, MogsaConfig&) { m.descent.max_iter = to_count(k, v); }},
      {"explore.sigma_min", [](auto& k, auto& v, MoleConfig& m, MogsaConfig&) { m.explore.sigma_min = to_real(k, v); }},
      {"explore.sigma_max", [](auto& k, auto& v, MoleConfig& m, MogsaConfig&) { m.explore.sigma_max = to_real(k, v); }},
      {"explore.phi_max", [](auto& k, auto& v, MoleConfig& m, MogsaConfig&) { m.explore.phi_max = to_real(k, v); }},
      {"explore.lambda", [](auto& k, auto& v, MoleConfig& m, MogsaConfig&) { m.explore.lambda = to_real(k, v); }},
      {"explore.max_steps", [](auto& k, auto& v, MoleConfig& m, MogsaConfig&) { m.explore.max_steps = to_count(k, v); }},
      {"postprocess.theta", [](auto& k, auto& v, MoleConfig& m, MogsaConfig&) { m.postprocess.theta = to_real(k, v); }},
      {"postprocess.max_iterations", [](auto& k, auto& v, MoleConfig& m, MogsaConfig&) { m.postprocess.max_iterations = to_count(k, v); }},
      {"postprocess.enabled", [](auto& k, auto& v, MoleConfig& m, MogsaConfig&) { m.postprocess_enabled = to_bool(k, v); }},
      {"postprocess.warmup", [](auto& k, auto& v, MoleConfig& m, MogsaConfig&) { m.postprocess_warmup = to_count(k, v); }},
      {"mole.max_starting_points", [](auto& k, auto& v, MoleConfig& m, MogsaConfig&) { m.max_starting_points = to_count(k, v); }},
      {"mole.max_sets", [](auto& k, auto& v, MoleConfig& m, MogsaConfig&) { m.max_sets = to_count(k, v); }},
      {"mogsa.descent_step", [](auto& k, auto& v, MoleConfig&, MogsaConfig& g) { g.descent_step = to_real(k, v); }},
      {"mogsa.explore_step", [](auto& k, auto& v, MoleConfig&, MogsaConfig& g) { g.explore_step = to_real(k, v); }},
      {"mogsa.mog_eps", [](auto& k, auto& v, MoleConfig&, MogsaConfig& g) { g.mog_eps = to_real(k, v); }},
      {"mogsa.max_descent_iter", [](auto& k, auto& v, MoleConfig&, MogsaConfig& g) { g.max_descent_iter = to_count(k, v); }},
      {"mogsa.max_explore_iter", [](auto& k, auto& v, MoleConfig&, MogsaConfig& g) { g.max_explore_iter = to_count(k, v); }},
      {"mogsa.max_rounds", [](auto& k, auto& v, MoleConfig&, MogsaConfig& g) { g.max_rounds = to_count(k, v); }},
  };
  return table;
}

}  // namespace

std::pair<std::string, std::string> split_key_value(const std::string& token) {
  const auto eq = token.find('=');
  if (eq == std::string::npos) {
    throw MoleError(ErrorCode::InvalidConfig, "expected key=value, got '" + token + "'");
  }
  std::string key = trim(token.substr(0, eq));
  std::string value = trim(token.substr(eq + 1));
  if (key.empty()) throw MoleError(ErrorCode::InvalidConfig, "empty key in '" + token + "'");
  return {key, value};
}

KeyValues parse_key_values(std::istream& in) {
  KeyValues out;
  std::string line;
  while (std::getline(in, line)) {
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    auto [k, v] = split_key_value(t);
    out[k] = v;
  }
  return out;
}

void apply_overrides(const KeyValues& values, MoleConfig& mole, MogsaConfig& mogsa) {
  const auto& table = setters();
  for (const auto& [key, value] : values) {
    const auto it = table.find(key);
    if (it == table.end()) throw MoleError(ErrorCode::InvalidConfig, "unknown config key '" + key + "'");
    it->second(key, value, mole, mogsa);
  }
}

std::vector<std::string> known_config_keys() {
  std::vector<std::string> keys;
  for (const auto& [k, s] : setters()) keys.push_back(k);
  return keys;
}

}  // namespace mole
