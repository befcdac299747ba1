// Copyright 2026 The hybridrelay Authors
// SPDX-License-Identifier: Apache-2.0
#include "hybridrelay/config.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>

#include "hybridrelay/errors.hpp"

namespace hybridrelay::config {

namespace {

using channel::BandParams;

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

bool ends_with(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

struct Field {
  std::string_view key;
  std::function<double&(ModelConfig&)> ref;
};

double& band_field(ModelConfig& m, bool rf, double BandParams::*member) {
  BandParams& params = rf ? m.scenario.rf : m.scenario.thz;
  return params.*member;
}

// Real-valued parameters addressable by key. Integer settings are handled
// separately in ModelConfig::set.
const std::vector<Field>& fields() {
  static const std::vector<Field> table = [] {
    std::vector<Field> t;
    auto band = [&t](std::string_view key, bool rf, double BandParams::*member) {
      t.push_back({key, [rf, member](ModelConfig& m) -> double& {
                     return band_field(m, rf, member);
                   }});
    };
    t.push_back({"rate.target_bps", [](ModelConfig& m) -> double& { return m.scenario.rate_bps; }});
    band("rf.tx_power_w", true, &BandParams::tx_power_w);
    band("rf.antenna_gain", true, &BandParams::antenna_gain);
    band("rf.carrier_hz", true, &BandParams::carrier_hz);
    band("rf.pathloss_exponent", true, &BandParams::pathloss_exponent);
    band("rf.bandwidth_hz", true, &BandParams::bandwidth_hz);
    band("rf.noise_power_w", true, &BandParams::noise_power_w);
    band("thz.tx_power_w", false, &BandParams::tx_power_w);
    band("thz.antenna_gain", false, &BandParams::antenna_gain);
    band("thz.carrier_hz", false, &BandParams::carrier_hz);
    band("thz.absorption_per_m", false, &BandParams::absorption_per_m);
    band("thz.alpha", false, &BandParams::alpha);
    band("thz.mu", false, &BandParams::mu);
    band("thz.bandwidth_hz", false, &BandParams::bandwidth_hz);
    band("thz.noise_power_w", false, &BandParams::noise_power_w);
    t.push_back({"geometry.r_sd_m", [](ModelConfig& m) -> double& { return m.scenario.geometry.r_sd_m; }});
    t.push_back({"geometry.r_c_m", [](ModelConfig& m) -> double& { return m.scenario.geometry.r_c_m; }});
    t.push_back({"geometry.density_rf_per_m2",
                 [](ModelConfig& m) -> double& { return m.scenario.geometry.density_rf; }});
    t.push_back({"geometry.density_thz_per_m2",
                 [](ModelConfig& m) -> double& { return m.scenario.geometry.density_thz; }});
    t.push_back({"quadrature.abs_tol", [](ModelConfig& m) -> double& { return m.quad.abs_tol; }});
    t.push_back({"quadrature.rel_tol", [](ModelConfig& m) -> double& { return m.quad.rel_tol; }});
    return t;
  }();
  return table;
}

const Field* find_field(std::string_view key) {
  for (const auto& f : fields()) {
    if (f.key == key) return &f;
  }
  return nullptr;
}

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

}  // namespace

const ConfigFile::Entry* ConfigFile::find(std::string_view key) const {
  for (const auto& e : entries) {
    if (e.key == key) return &e;
  }
  return nullptr;
}

ConfigFile parse_config(std::string_view text) {
  ConfigFile out;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto end = std::min(text.find('\n', pos), text.size());
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) {
      if (end == text.size()) break;
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("line " + std::to_string(line_no) + ": expected 'key = value'");
    }
    const auto key = trim(line.substr(0, eq));
    const auto value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError("line " + std::to_string(line_no) + ": empty key");
    for (const auto& e : out.entries) {
      if (e.key == key) {
        throw ConfigError("line " + std::to_string(line_no) + ": duplicate key '" +
                          std::string(key) + "'");
      }
    }
    out.entries.push_back({std::string(key), std::string(value), line_no});
    if (end == text.size()) break;
  }
  return out;
}

ConfigFile load_config_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open config file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  try {
    return parse_config(buffer.str());
  } catch (const ConfigError& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

double parse_number(std::string_view text, std::string_view key) {
  text = trim(text);
  double value = 0.0;
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  if (!text.empty() && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || text.empty() || !std::isfinite(value)) {
    throw ConfigError("'" + std::string(key) + "': not a number: '" + std::string(text) + "'");
  }
  return value;
}

std::vector<std::string> split_list(std::string_view text) {
  std::vector<std::string> items;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto comma = std::min(text.find(',', pos), text.size());
    const auto item = trim(text.substr(pos, comma - pos));
    if (!item.empty()) items.emplace_back(item);
    pos = comma + 1;
  }
  return items;
}

void ModelConfig::set(std::string_view key, double value) {
  if (key == "tx_power_w") {
    set("rf.tx_power_w", value);
    set("thz.tx_power_w", value);
    return;
  }
  if (key == "rate.direct_slots") {
    if (value != 1.0 && value != 2.0) throw ConfigError("rate.direct_slots must be 1 or 2");
    scenario.direct_slots = static_cast<int>(value);
    return;
  }
  if (key == "quadrature.max_subdivisions") {
    if (value < 1.0 || value != std::floor(value)) {
      throw ConfigError("quadrature.max_subdivisions must be a positive integer");
    }
    quad.max_subdivisions = static_cast<int>(value);
    return;
  }
  if (ends_with(key, "_dbm")) {
    set(std::string(key.substr(0, key.size() - 4)) + "_w", channel::dbm_to_watts(value));
    return;
  }
  if (ends_with(key, "_dbi") || ends_with(key, "_db")) {
    const auto cut = ends_with(key, "_dbi") ? 4 : 3;
    set(key.substr(0, key.size() - cut), channel::db_to_linear(value));
    return;
  }
  const Field* field = find_field(key);
  if (field == nullptr) throw ConfigError("unknown parameter '" + std::string(key) + "'");
  field->ref(*this) = value;
  if (key == "rf.noise_power_w") rf_noise_explicit = true;
  if (key == "thz.noise_power_w") thz_noise_explicit = true;
  if (key == "rf.bandwidth_hz" && !rf_noise_explicit && value > 0.0) {
    scenario.rf.noise_power_w = channel::noise_power(value);
  }
  if (key == "thz.bandwidth_hz" && !thz_noise_explicit && value > 0.0) {
    scenario.thz.noise_power_w = channel::noise_power(value);
  }
}

double ModelConfig::get(std::string_view key) const {
  if (key == "rate.direct_slots") return scenario.direct_slots;
  if (key == "quadrature.max_subdivisions") return quad.max_subdivisions;
  if (key == "tx_power_w") return scenario.rf.tx_power_w;
  const Field* field = find_field(key);
  if (field == nullptr) throw ConfigError("unknown parameter '" + std::string(key) + "'");
  return field->ref(const_cast<ModelConfig&>(*this));
}

std::vector<std::pair<std::string, double>> ModelConfig::echo() const {
  std::vector<std::pair<std::string, double>> out;
  for (const auto& f : fields()) out.emplace_back(std::string(f.key), get(f.key));
  out.emplace_back("rate.direct_slots", scenario.direct_slots);
  out.emplace_back("quadrature.max_subdivisions", quad.max_subdivisions);
  return out;
}

ModelConfig model_from_config(const ConfigFile& file, ModelConfig base) {
  const auto* schema = file.find("schema");
  if (schema == nullptr) throw ConfigError("missing 'schema = " + std::to_string(kSchemaVersion) + "'");
  if (parse_number(schema->value, "schema") != kSchemaVersion) {
    throw ConfigError("unsupported schema '" + schema->value + "'");
  }
  for (const auto& e : file.entries) {
    if (e.key == "schema" || e.key.starts_with("experiment.")) continue;
    try {
      base.set(e.key, parse_number(e.value, e.key));
    } catch (const ConfigError& err) {
      throw ConfigError("line " + std::to_string(e.line) + ": " + err.what());
    }
  }
  try {
    base.scenario.validate();
    base.quad.validate();
  } catch (const DomainError& err) {
    throw ConfigError(err.what());
  }
  return base;
}

std::string default_config_text() {
  std::string text = "schema = " + std::to_string(kSchemaVersion) + "\n";
  for (const auto& [key, value] : ModelConfig{}.echo()) {
    text += key + " = " + format_number(value) + "\n";
  }
  return text;
}

}  // namespace hybridrelay::config
