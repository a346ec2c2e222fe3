#include "mobius/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "mobius/errors.hpp"

namespace mobius {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& v) {
  double out = 0.0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size() || v.empty())
    throw ConfigError(key + ": expected a number, got '" + v + "'");
  return out;
}

int parse_int(const std::string& key, const std::string& v) {
  int out = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size() || v.empty())
    throw ConfigError(key + ": expected an integer, got '" + v + "'");
  return out;
}

bool parse_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1") return true;
  if (v == "false" || v == "0") return false;
  throw ConfigError(key + ": expected true or false, got '" + v + "'");
}

std::string shortest(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

}  // namespace

std::string to_string(OutputFormat f) { return f == OutputFormat::csv ? "csv" : "json"; }

std::string to_string(SectorSelection s) {
  switch (s) {
    case SectorSelection::both: return "both";
    case SectorSelection::plus: return "plus";
    case SectorSelection::minus: return "minus";
  }
  return "both";
}

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = {
      "strip.R",          "strip.w",
      "strip.twist",      "grid.n_r",
      "grid.n_theta",     "physics.mass",
      "physics.wilson_parameter", "physics.sector",
      "physics.count",    "physics.energy_window",
      "physics.flat_control", "physics.printed_mass_sign",
      "physics.dense_cap", "output.format",
      "output.path",      "output.precision"};
  return keys;
}

void apply_setting(RunConfig& c, const std::string& key, const std::string& raw) {
  const std::string v = trim(raw);
  if (key == "strip.R") c.strip.R = parse_double(key, v);
  else if (key == "strip.w") c.strip.w = parse_double(key, v);
  else if (key == "strip.twist") c.strip.twist = parse_int(key, v);
  else if (key == "grid.n_r") c.n_r = parse_int(key, v);
  else if (key == "grid.n_theta") c.n_theta = parse_int(key, v);
  else if (key == "physics.mass") c.mass = parse_double(key, v);
  else if (key == "physics.wilson_parameter") c.wilson = parse_double(key, v);
  else if (key == "physics.sector") {
    if (v == "both") c.sectors = SectorSelection::both;
    else if (v == "plus" || v == "+1" || v == "1") c.sectors = SectorSelection::plus;
    else if (v == "minus" || v == "-1") c.sectors = SectorSelection::minus;
    else throw ConfigError(key + ": expected both, plus or minus, got '" + v + "'");
  }
  else if (key == "physics.count") c.count = parse_int(key, v);
  else if (key == "physics.energy_window") c.energy_window = parse_double(key, v);
  else if (key == "physics.flat_control") c.flat_control = parse_bool(key, v);
  else if (key == "physics.printed_mass_sign") c.printed_mass_sign = parse_bool(key, v);
  else if (key == "physics.dense_cap") c.dense_cap = parse_int(key, v);
  else if (key == "output.format") {
    if (v == "csv") c.format = OutputFormat::csv;
    else if (v == "json") c.format = OutputFormat::json;
    else throw ConfigError(key + ": expected csv or json, got '" + v + "'");
  }
  else if (key == "output.path") {
    if (v.empty()) throw ConfigError(key + ": must not be empty");
    c.path = v;
  }
  else if (key == "output.precision") c.precision = parse_int(key, v);
  else throw ConfigError("unknown config key '" + key + "'");
}

std::vector<std::string> violations(const RunConfig& c) {
  std::vector<std::string> out;
  auto finite = [](double x) { return std::isfinite(x); };
  if (!(c.strip.R > 0.0) || !finite(c.strip.R)) out.push_back("strip.R must be > 0, got " + shortest(c.strip.R));
  if (!(c.strip.w > 0.0) || !(c.strip.w < c.strip.R))
    out.push_back("strip.w must satisfy 0 < w < R, got " + shortest(c.strip.w));
  if (c.strip.twist < 1 || c.strip.twist > 64)
    out.push_back("strip.twist must be in [1, 64], got " + std::to_string(c.strip.twist));
  if (c.n_r < 8 || c.n_r > 4096) out.push_back("grid.n_r must be in [8, 4096], got " + std::to_string(c.n_r));
  if (c.n_theta < 32 || c.n_theta > 65536)
    out.push_back("grid.n_theta must be in [32, 65536], got " + std::to_string(c.n_theta));
  if (!finite(c.mass)) out.push_back("physics.mass must be finite");
  if (!(c.wilson >= 0.0) || !finite(c.wilson))
    out.push_back("physics.wilson_parameter must be >= 0, got " + shortest(c.wilson));
  if (c.count < 1) out.push_back("physics.count must be >= 1, got " + std::to_string(c.count));
  if (!(c.energy_window > 0.0) || !finite(c.energy_window))
    out.push_back("physics.energy_window must be > 0, got " + shortest(c.energy_window));
  if (c.dense_cap < 2) out.push_back("physics.dense_cap must be >= 2, got " + std::to_string(c.dense_cap));
  if (c.path.empty()) out.push_back("output.path must not be empty");
  if (c.precision < 1 || c.precision > 17)
    out.push_back("output.precision must be in [1, 17], got " + std::to_string(c.precision));
  return out;
}

void validate(const RunConfig& c) {
  const auto v = violations(c);
  if (v.empty()) return;
  std::string msg = "invalid configuration:";
  for (const auto& s : v) msg += "\n  " + s;
  throw ConfigError(msg);
}

RunConfig parse_config(const std::string& text, RunConfig base) {
  std::istringstream in(text);
  std::string line;
  std::vector<std::string> errors;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) {
      errors.push_back("line " + std::to_string(lineno) + ": expected key = value, got '" + t + "'");
      continue;
    }
    try {
      apply_setting(base, trim(t.substr(0, eq)), t.substr(eq + 1));
    } catch (const ConfigError& e) {
      errors.push_back("line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  if (!errors.empty()) {
    std::string msg = "invalid configuration:";
    for (const auto& s : errors) msg += "\n  " + s;
    throw ConfigError(msg);
  }
  return base;
}

RunConfig load_config(const std::string& path, RunConfig base) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot read config file '" + path + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return parse_config(ss.str(), std::move(base));
}

RunConfig resolve_config(const std::string& config_path, const std::vector<std::string>& overrides) {
  RunConfig c = config_path.empty() ? RunConfig{} : load_config(config_path);
  std::vector<std::string> errors;
  for (const auto& o : overrides) {
    const auto eq = o.find('=');
    if (eq == std::string::npos) {
      errors.push_back("--set expects key=value, got '" + o + "'");
      continue;
    }
    try {
      apply_setting(c, trim(o.substr(0, eq)), o.substr(eq + 1));
    } catch (const ConfigError& e) {
      errors.push_back(e.what());
    }
  }
  for (const auto& v : violations(c)) errors.push_back(v);
  if (!errors.empty()) {
    std::string msg = "invalid configuration:";
    for (const auto& s : errors) msg += "\n  " + s;
    throw ConfigError(msg);
  }
  return c;
}

std::vector<std::pair<std::string, std::string>> config_entries(const RunConfig& c) {
  return {{"strip.R", shortest(c.strip.R)},
          {"strip.w", shortest(c.strip.w)},
          {"strip.twist", std::to_string(c.strip.twist)},
          {"grid.n_r", std::to_string(c.n_r)},
          {"grid.n_theta", std::to_string(c.n_theta)},
          {"physics.mass", shortest(c.mass)},
          {"physics.wilson_parameter", shortest(c.wilson)},
          {"physics.sector", to_string(c.sectors)},
          {"physics.count", std::to_string(c.count)},
          {"physics.energy_window", shortest(c.energy_window)},
          {"physics.flat_control", c.flat_control ? "true" : "false"},
          {"physics.printed_mass_sign", c.printed_mass_sign ? "true" : "false"},
          {"physics.dense_cap", std::to_string(c.dense_cap)},
          {"output.format", to_string(c.format)},
          {"output.path", c.path},
          {"output.precision", std::to_string(c.precision)}};
}

std::string serialize(const RunConfig& c) {
  std::string out;
  for (const auto& [k, v] : config_entries(c)) out += k + " = " + v + "\n";
  return out;
}

}  // namespace mobius
