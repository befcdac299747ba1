// Copyright 2026 The hybridrelay Authors
// SPDX-License-Identifier: Apache-2.0
//
// Flat "key = value" parameter files.
//
//   # comment
//   schema = 1
//   rf.tx_power_w = 1
//   thz.antenna_gain_dbi = 40
//   geometry.r_sd_m = 50
//
// Values with a _dbm / _dbi / _db suffix are converted to linear units on load.
// Keys under "experiment." are kept verbatim for the experiment driver; every
// other key must name a known scenario or quadrature parameter.
#pragma once

#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hybridrelay/numerics.hpp"
#include "hybridrelay/scenario.hpp"

namespace hybridrelay::config {

inline constexpr int kSchemaVersion = 1;

/// Parsed file: keys in file order with their 1-based line numbers.
struct ConfigFile {
  struct Entry {
    std::string key;
    std::string value;
    int line = 0;
  };
  std::vector<Entry> entries;

  const Entry* find(std::string_view key) const;
};

ConfigFile parse_config(std::string_view text);
ConfigFile load_config_file(const std::string& path);

/// Scenario plus the bookkeeping needed to re-derive dependent quantities when
/// a parameter is changed later (thermal noise follows bandwidth unless the
/// noise power was given explicitly).
struct ModelConfig {
  Scenario scenario = reference_scenario();
  numerics::QuadratureSpec quad;
  bool rf_noise_explicit = false;
  bool thz_noise_explicit = false;

  /// Sets one numeric parameter by key. Accepts the suffixed unit variants and
  /// the shorthand "tx_power_w" (both bands). Throws ConfigError for unknown
  /// keys.
  void set(std::string_view key, double value);
  double get(std::string_view key) const;

  /// Key/value listing of every parameter in canonical units.
  std::vector<std::pair<std::string, double>> echo() const;
};

/// Applies every non-"experiment." entry of `file` on top of `base`.
/// Throws ConfigError on unknown keys, unparsable numbers, a missing or wrong
/// schema line, or a scenario that fails validation.
ModelConfig model_from_config(const ConfigFile& file, ModelConfig base = {});

/// Parses a floating-point value, accepting forms such as 4e-3 and 420e6.
double parse_number(std::string_view text, std::string_view key);

/// Splits a comma-separated list and trims each item.
std::vector<std::string> split_list(std::string_view text);

/// Renders the reference parameter set as a config file.
std::string default_config_text();

}  // namespace hybridrelay::config
