#pragma once

// Named scenario presets, one per reproduced figure. A preset expands to one
// or more raw configurations so that command-line overrides still apply.

#include "rabisig/config.hpp"

#include <string>
#include <vector>

namespace rabisig::presets {

struct PresetRun {
  std::string label;  // subdirectory name for multi-run presets, empty otherwise
  config::RawConfig config;
};

struct Preset {
  std::string name;
  std::string figure;
  std::string description;
  std::vector<PresetRun> runs;
};

const std::vector<Preset>& all();

/// Throws ConfigError listing the known names if `name` is unknown.
const Preset& find(const std::string& name);

/// Two-level medium with the arctan-ramp drive used throughout the figures.
config::RawConfig baseline_config();

}  // namespace rabisig::presets
