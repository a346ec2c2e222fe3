#pragma once

// Run configuration: a key=value file plus command-line overrides.
//
//   # comment
//   strip.R = 4
//   grid.n_theta = 96
//
// Keys are listed in config_keys(). serialize() writes every key in that
// order and parse_config(serialize(c)) == c.

#include <string>
#include <vector>

#include "mobius/strip.hpp"

namespace mobius {

enum class OutputFormat { csv, json };
enum class SectorSelection { both, plus, minus };

struct RunConfig {
  StripParams strip;
  int n_r = 24;
  int n_theta = 96;

  double mass = 0.0;
  double wilson = 0.5;
  SectorSelection sectors = SectorSelection::both;
  int count = 20;
  double energy_window = 1.0;
  bool flat_control = false;
  bool printed_mass_sign = false;
  int dense_cap = 12000;

  OutputFormat format = OutputFormat::csv;
  std::string path = "-";
  int precision = 12;

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

const std::vector<std::string>& config_keys();

/// Sets one field from its textual value. Throws ConfigError naming the key.
void apply_setting(RunConfig& c, const std::string& key, const std::string& value);

/// Every range violation, one message per field; empty when valid.
std::vector<std::string> violations(const RunConfig& c);

/// Throws ConfigError listing all violations.
void validate(const RunConfig& c);

/// Parses key=value text on top of `base`. All malformed lines and bad values
/// are collected into one ConfigError.
RunConfig parse_config(const std::string& text, RunConfig base = {});

RunConfig load_config(const std::string& path, RunConfig base = {});

/// Applies "key=value" overrides in order, then validates.
RunConfig resolve_config(const std::string& config_path, const std::vector<std::string>& overrides);

/// key=value pairs in config_keys() order, values in shortest round-trip form.
std::vector<std::pair<std::string, std::string>> config_entries(const RunConfig& c);

std::string serialize(const RunConfig& c);

std::string to_string(OutputFormat f);
std::string to_string(SectorSelection s);

}  // namespace mobius
