#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tactile/context/fsm.hpp"
#include "tactile/geometry/feature.hpp"
#include "tactile/patterns/clock.hpp"
#include "tactile/stimulus/schedule.hpp"

namespace tactile::cli {

struct Config {
  std::string scene;
  std::string materials;
  std::string trace;       // pose CSV
  std::string trace_spec;  // key=value generator spec
  std::string out_dir = "out";
  std::string calibration;  // calibration script; empty: 1 mA everywhere
  patterns::SynthesisParams params;
  context::ContextConfig context;
  geometry::FeatureThresholds thresholds;
  stimulus::ScanMode scan = stimulus::ScanMode::Compact;
  std::optional<std::uint64_t> seed;

  // Throws Error{ConfigError}.
  void validate() const;
};

// Every accepted key, e.g. "params.alpha", "thresholds.window".
const std::vector<std::string>& config_keys();

// Sets one key. `key` may be a unique suffix of a full key ("alpha").
// Throws Error{ConfigError} for unknown, ambiguous or malformed entries.
void set_config_value(Config& config, const std::string& key, const std::string& value);

// "key=value".
void apply_override(Config& config, const std::string& assignment);

// Flat key=value lines, `#` comments; full keys only.
Config parse_config(const std::string& text, Config base = {});
Config read_config(const std::string& path, Config base = {});

}  // namespace tactile::cli
