#pragma once

// Flat key/value scenario configuration: parsing, overrides and validation
// into simulation records. Frequencies in the file are ordinary (Hz), field
// amplitudes in V/cm and concentrations per cm^3; everything is converted
// to SI/angular units on validation.

#include "rabisig/analysis.hpp"
#include "rabisig/simulation.hpp"

#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace rabisig::config {

/// Ordered key -> raw value text.
using RawConfig = std::map<std::string, std::string>;

/// Parses `key = value` lines; '#' starts a comment. Throws ConfigError
/// with the line number on malformed lines.
RawConfig parse(const std::string& text);
RawConfig load(const std::filesystem::path& path);

/// Applies a `key=value` override; the key must be a known key.
void apply_override(RawConfig& cfg, const std::string& assignment);

/// Keys accepted by simulate/validate.
const std::vector<std::string>& simulation_keys();
/// Keys accepted by stark-map.
const std::vector<std::string>& stark_keys();

struct SimulationConfig {
  Scenario scenario;
  analysis::TimeGate gate = analysis::default_gate;

  bool operator==(const SimulationConfig&) const = default;
};

/// Converts and validates a raw configuration. Unknown keys, missing
/// required keys and violated invariants raise ConfigError naming the key.
SimulationConfig validate_config(const RawConfig& raw);

/// Re-checks an already validated configuration; returns it unchanged.
SimulationConfig validate_config(const SimulationConfig& cfg);

struct StarkConfig {
  double b_e = 0.0;        // rad/s
  double d0 = 0.0;         // C m
  std::vector<double> fields;  // V/m, ascending
};

StarkConfig validate_stark_config(const RawConfig& raw);

/// Renders a raw configuration back to file syntax, keys sorted.
std::string to_text(const RawConfig& cfg);

}  // namespace rabisig::config
