// Copyright 2026 The hybridrelay Authors
// SPDX-License-Identifier: Apache-2.0
#include "hybridrelay/experiments.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "hybridrelay/errors.hpp"

namespace hybridrelay::experiments {

namespace {

using analysis::AnalysisContext;
using channel::Band;

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string format_optional(const std::optional<double>& v) {
  return v ? format_double(*v) : std::string();
}

std::string sanitize(std::string text) {
  std::replace(text.begin(), text.end(), ',', ';');
  std::replace(text.begin(), text.end(), '\n', ' ');
  std::replace(text.begin(), text.end(), '\r', ' ');
  return text;
}

bool parse_bool(std::string_view text, std::string_view key) {
  if (text == "true" || text == "yes" || text == "1") return true;
  if (text == "false" || text == "no" || text == "0") return false;
  throw ConfigError("'" + std::string(key) + "': expected true or false");
}

std::uint64_t parse_unsigned(std::string_view text, std::string_view key) {
  std::uint64_t value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    // Accept integral values written in floating notation, e.g. 1e5.
    const double d = config::parse_number(text, key);
    if (d < 0.0 || d != std::floor(d) || d > 9.0e18) {
      throw ConfigError("'" + std::string(key) + "': expected a nonnegative integer");
    }
    return static_cast<std::uint64_t>(d);
  }
  return value;
}

// "a, b, c" or "start:step:stop" (inclusive, tolerant to rounding of stop).
std::vector<double> parse_grid(std::string_view text) {
  std::vector<double> grid;
  if (text.find(':') != std::string_view::npos && text.find(',') == std::string_view::npos) {
    std::vector<double> parts;
    std::size_t pos = 0;
    while (pos <= text.size()) {
      const auto colon = std::min(text.find(':', pos), text.size());
      parts.push_back(config::parse_number(text.substr(pos, colon - pos), "experiment.grid"));
      pos = colon + 1;
    }
    if (parts.size() != 3 || !(parts[1] > 0.0) || parts[2] < parts[0]) {
      throw ConfigError("experiment.grid: range must be start:step:stop with step > 0");
    }
    const auto count = static_cast<long>(std::floor((parts[2] - parts[0]) / parts[1] + 1e-9));
    for (long i = 0; i <= count; ++i) {
      // Round away the accumulated representation error, so 1e-3:5e-4:8e-3
      // yields 0.003 rather than 0.0030000000000000001.
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.15g", parts[0] + parts[1] * static_cast<double>(i));
      grid.push_back(std::strtod(buf, nullptr));
    }
    return grid;
  }
  for (const auto& item : config::split_list(text)) {
    grid.push_back(config::parse_number(item, "experiment.grid"));
  }
  return grid;
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

bool is_density_key(std::string_view key) {
  return key == "geometry.density_rf_per_m2" || key == "geometry.density_thz_per_m2";
}

std::vector<ResultRow> run_iso(const ExperimentSpec& spec) {
  std::vector<ResultRow> rows;
  std::optional<AnalysisContext> base;
  std::string base_error;
  try {
    base.emplace(spec.base.scenario, spec.base.quad);
  } catch (const std::exception& e) {
    base_error = e.what();
  }
  for (double density_thz : spec.grid) {
    ResultRow row;
    row.swept_value = density_thz;
    row.protocol = ProtocolKind::HRS;
    const auto start = std::chrono::steady_clock::now();
    if (!base) {
      row.status = "error: " + sanitize(base_error);
    } else {
      try {
        const double density_rf = iso_coverage_search(*base, spec.target, density_thz,
                                                      spec.bracket_lo, spec.bracket_hi,
                                                      spec.coverage_tol);
        row.solved_value = density_rf;
        row.analytical =
            analysis::coverage_hrs(base->with_densities(density_rf, density_thz)).estimate.value;
      } catch (const std::exception& e) {
        row.status = "error: " + sanitize(e.what());
      }
    }
    if (spec.record_timing) {
      row.wall_time_s =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

std::string_view kind_name(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::RateSweep: return "rate_sweep";
    case ExperimentKind::DistanceSweep: return "distance_sweep";
    case ExperimentKind::PowerSweep: return "power_sweep";
    case ExperimentKind::IsoCoverage: return "iso_coverage";
    case ExperimentKind::SinglePoint: return "single_point";
  }
  return "unknown";
}

ExperimentKind parse_kind(std::string_view name) {
  for (auto kind : {ExperimentKind::RateSweep, ExperimentKind::DistanceSweep,
                    ExperimentKind::PowerSweep, ExperimentKind::IsoCoverage,
                    ExperimentKind::SinglePoint}) {
    if (kind_name(kind) == name) return kind;
  }
  throw ConfigError("unknown experiment kind '" + std::string(name) + "'");
}

std::string_view default_parameter(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::RateSweep: return "rate.target_bps";
    case ExperimentKind::DistanceSweep: return "geometry.r_sd_m";
    case ExperimentKind::PowerSweep: return "tx_power_w";
    case ExperimentKind::IsoCoverage: return "geometry.density_thz_per_m2";
    case ExperimentKind::SinglePoint: return "";
  }
  return "";
}

void ExperimentSpec::validate() const {
  if (protocols.empty()) throw ConfigError("experiment: protocol list is empty");
  if (trials < 1) throw ConfigError("experiment: trials must be >= 1");
  if (kind != ExperimentKind::SinglePoint) {
    if (grid.empty()) throw ConfigError("experiment: sweep grid is empty");
    if (!std::is_sorted(grid.begin(), grid.end())) {
      throw ConfigError("experiment: sweep grid must be sorted ascending");
    }
  }
  if (kind == ExperimentKind::IsoCoverage) {
    if (!(target > 0.0 && target < 1.0)) throw ConfigError("experiment: target must be in (0, 1)");
    if (!(bracket_lo >= 0.0 && bracket_lo < bracket_hi)) {
      throw ConfigError("experiment: bracket must satisfy 0 <= lo < hi");
    }
    if (!(coverage_tol > 0.0)) throw ConfigError("experiment: coverage_tol must be positive");
    if (grid.front() < 0.0) throw ConfigError("experiment: densities must be nonnegative");
  } else if (kind != ExperimentKind::SinglePoint) {
    config::ModelConfig probe = base;
    probe.set(parameter, grid.front());  // rejects unknown keys
  }
  try {
    base.scenario.validate();
    base.quad.validate();
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
}

ExperimentSpec experiment_from_config(const config::ConfigFile& file) {
  ExperimentSpec spec;
  spec.base = config::model_from_config(file);
  const auto* kind = file.find("experiment.kind");
  if (kind == nullptr) throw ConfigError("missing experiment.kind");
  spec.kind = parse_kind(kind->value);
  spec.parameter = std::string(default_parameter(spec.kind));
  spec.protocols = {ProtocolKind::HRS};

  for (const auto& e : file.entries) {
    if (!e.key.starts_with("experiment.")) continue;
    const std::string_view key = e.key;
    const std::string_view value = e.value;
    try {
      if (key == "experiment.kind") {
        continue;
      } else if (key == "experiment.protocols") {
        spec.protocols.clear();
        for (const auto& name : config::split_list(value)) {
          if (name == "all") {
            spec.protocols.assign(std::begin(simulation::kAllProtocols),
                                  std::end(simulation::kAllProtocols));
          } else {
            spec.protocols.push_back(simulation::parse_protocol(name));
          }
        }
      } else if (key == "experiment.parameter") {
        spec.parameter = std::string(value);
      } else if (key == "experiment.grid") {
        spec.grid = parse_grid(value);
      } else if (key == "experiment.trials") {
        spec.trials = static_cast<std::int64_t>(parse_unsigned(value, key));
      } else if (key == "experiment.seed") {
        spec.master_seed = parse_unsigned(value, key);
      } else if (key == "experiment.output") {
        spec.output_path = std::string(value);
      } else if (key == "experiment.analytical") {
        spec.analytical = parse_bool(value, key);
      } else if (key == "experiment.timing") {
        spec.record_timing = parse_bool(value, key);
      } else if (key == "experiment.workers") {
        spec.workers = static_cast<unsigned>(parse_unsigned(value, key));
      } else if (key == "experiment.target") {
        spec.target = config::parse_number(value, key);
      } else if (key == "experiment.coverage_tol") {
        spec.coverage_tol = config::parse_number(value, key);
      } else if (key == "experiment.bracket") {
        const auto parts = config::split_list(value);
        if (parts.size() != 2) throw ConfigError("experiment.bracket: expected 'lo, hi'");
        spec.bracket_lo = config::parse_number(parts[0], key);
        spec.bracket_hi = config::parse_number(parts[1], key);
      } else {
        throw ConfigError("unknown key '" + e.key + "'");
      }
    } catch (const ConfigError& err) {
      throw ConfigError("line " + std::to_string(e.line) + ": " + err.what());
    }
  }
  spec.validate();
  return spec;
}

double iso_coverage_search(const AnalysisContext& ctx_template, double target, double density_thz,
                           double bracket_lo, double bracket_hi, double coverage_tol) {
  if (!(target > 0.0 && target < 1.0)) throw DomainError("iso_coverage_search: target not in (0,1)");
  if (!(bracket_lo >= 0.0 && bracket_lo < bracket_hi)) {
    throw DomainError("iso_coverage_search: need 0 <= lo < hi");
  }
  if (!(coverage_tol > 0.0)) throw DomainError("iso_coverage_search: tolerance must be positive");
  auto coverage_at = [&](double density_rf) {
    return analysis::coverage_hrs(ctx_template.with_densities(density_rf, density_thz))
        .estimate.value;
  };
  const double p_lo = coverage_at(bracket_lo);
  if (std::abs(p_lo - target) < coverage_tol) return bracket_lo;
  if (p_lo > target) {
    if (bracket_lo == 0.0) return 0.0;
    throw NumericalError("iso_coverage_search: coverage at the lower bracket already exceeds the target");
  }
  const double p_hi = coverage_at(bracket_hi);
  if (std::abs(p_hi - target) < coverage_tol) return bracket_hi;
  if (p_hi < target) {
    throw NumericalError("iso_coverage_search: coverage at the upper bracket is below the target");
  }
  double lo = bracket_lo;
  double hi = bracket_hi;
  for (int iter = 0; iter < 200; ++iter) {
    const double mid = 0.5 * (lo + hi);
    const double p = coverage_at(mid);
    if (std::abs(p - target) < coverage_tol) return mid;
    (p < target ? lo : hi) = mid;
    if (hi - lo <= 1e-15 * hi) return mid;
  }
  throw NumericalError("iso_coverage_search: bisection did not converge");
}

std::optional<double> analytical_coverage(const AnalysisContext& ctx, ProtocolKind protocol) {
  switch (protocol) {
    case ProtocolKind::HRS: return analysis::coverage_hrs(ctx).estimate.value;
    case ProtocolKind::RfOnly: return analysis::coverage_single_band(ctx, Band::RF).value;
    case ProtocolKind::ThzOnly: return analysis::coverage_single_band(ctx, Band::THz).value;
    case ProtocolKind::DirectRF: return analysis::coverage_direct(ctx, Band::RF).value;
    case ProtocolKind::DirectTHz: return analysis::coverage_direct(ctx, Band::THz).value;
    case ProtocolKind::OptimalMaxMin: return std::nullopt;
  }
  return std::nullopt;
}

std::uint64_t point_seed(std::uint64_t master_seed, std::size_t point, ProtocolKind protocol) {
  return pointprocess::substream_seed(pointprocess::substream_seed(master_seed, point),
                                      static_cast<std::uint64_t>(protocol) + 1);
}

std::vector<ResultRow> run_experiment(const ExperimentSpec& spec) {
  spec.validate();
  std::vector<ResultRow> rows;
  if (spec.kind == ExperimentKind::IsoCoverage) {
    rows = run_iso(spec);
  } else {
    const bool single = spec.kind == ExperimentKind::SinglePoint;
    const std::vector<double> points = single ? std::vector<double>{0.0} : spec.grid;
    const bool wants_analysis =
        spec.analytical &&
        std::any_of(spec.protocols.begin(), spec.protocols.end(),
                    [](ProtocolKind p) { return p != ProtocolKind::OptimalMaxMin; });
    // Density sweeps reuse one set of retention profiles.
    std::optional<AnalysisContext> shared;
    if (wants_analysis && !single && is_density_key(spec.parameter)) {
      try {
        shared.emplace(spec.base.scenario, spec.base.quad);
      } catch (const std::exception&) {
        // Reported per row below.
      }
    }

    for (std::size_t i = 0; i < points.size(); ++i) {
      config::ModelConfig model = spec.base;
      std::string point_error;
      try {
        if (!single) model.set(spec.parameter, points[i]);
        model.scenario.validate();
      } catch (const std::exception& e) {
        point_error = e.what();
      }

      std::optional<AnalysisContext> ctx;
      std::string analysis_error;
      if (point_error.empty() && wants_analysis) {
        try {
          if (shared) {
            const auto& g = model.scenario.geometry;
            ctx.emplace(shared->with_densities(g.density_rf, g.density_thz));
          } else {
            ctx.emplace(model.scenario, model.quad);
          }
        } catch (const std::exception& e) {
          analysis_error = e.what();
        }
      }

      for (ProtocolKind protocol : spec.protocols) {
        ResultRow row;
        row.swept_value = points[i];
        row.protocol = protocol;
        const auto start = std::chrono::steady_clock::now();
        if (!point_error.empty()) {
          row.status = "error: " + sanitize(point_error);
        } else {
          std::vector<std::string> problems;
          if (ctx) {
            try {
              row.analytical = analytical_coverage(*ctx, protocol);
            } catch (const std::exception& e) {
              problems.push_back(std::string("analytical: ") + e.what());
            }
          } else if (!analysis_error.empty() && protocol != ProtocolKind::OptimalMaxMin) {
            problems.push_back("analytical: " + analysis_error);
          }
          const auto mc = simulation::monte_carlo_coverage(
              model.scenario, protocol, spec.trials, point_seed(spec.master_seed, i, protocol),
              spec.workers);
          row.mc_value = mc.value;
          row.mc_half_width = mc.half_width;
          row.trials = mc.trials;
          if (!problems.empty()) row.status = "error: " + sanitize(problems.front());
        }
        if (spec.record_timing) {
          row.wall_time_s =
              std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        }
        rows.push_back(std::move(row));
      }
    }
  }
  if (!spec.output_path.empty()) write_csv(spec.output_path, spec, rows);
  return rows;
}

std::string render_csv(const ExperimentSpec& spec, const std::vector<ResultRow>& rows,
                       std::string_view timestamp) {
  std::ostringstream out;
  out << "# hybridrelay " << HYBRIDRELAY_VERSION << " schema=" << config::kSchemaVersion << "\n";
  out << "# generated: " << timestamp << "\n";
  out << "# kind: " << kind_name(spec.kind) << "\n";
  out << "# parameter: " << spec.parameter << "\n";
  out << "# protocols:";
  for (std::size_t i = 0; i < spec.protocols.size(); ++i) {
    out << (i == 0 ? " " : ", ") << simulation::protocol_name(spec.protocols[i]);
  }
  out << "\n";
  out << "# trials: " << spec.trials << "\n";
  out << "# seed: " << spec.master_seed << "\n";
  if (spec.kind == ExperimentKind::IsoCoverage) {
    out << "# target: " << format_double(spec.target) << "\n";
    out << "# bracket: " << format_double(spec.bracket_lo) << ", "
        << format_double(spec.bracket_hi) << "\n";
    out << "# coverage_tol: " << format_double(spec.coverage_tol) << "\n";
  }
  for (const auto& [key, value] : spec.base.echo()) {
    out << "# " << key << " = " << format_double(value) << "\n";
  }
  out << kCsvColumns << "\n";
  for (const auto& row : rows) {
    out << format_double(row.swept_value) << ',' << simulation::protocol_name(row.protocol) << ','
        << format_optional(row.analytical) << ',' << format_optional(row.mc_value) << ','
        << format_optional(row.mc_half_width) << ',' << row.trials << ','
        << format_double(row.wall_time_s) << ',' << format_optional(row.solved_value) << ','
        << sanitize(row.status) << "\n";
  }
  return out.str();
}

void write_csv(const std::string& path, const ExperimentSpec& spec,
               const std::vector<ResultRow>& rows) {
  const std::string text = render_csv(spec, rows, utc_timestamp());
  const std::filesystem::path target(path);
  std::filesystem::path temp = target;
  temp += ".tmp";
  {
    std::ofstream out(temp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + temp.string() + "' for writing");
    out << text;
    out.flush();
    if (!out) throw IoError("write to '" + temp.string() + "' failed");
  }
  std::error_code ec;
  std::filesystem::rename(temp, target, ec);
  if (ec) {
    std::filesystem::remove(temp, ec);
    throw IoError("cannot move results into '" + path + "'");
  }
}

std::vector<ResultRow> parse_csv(std::string_view text) {
  std::vector<ResultRow> rows;
  bool header_seen = false;
  std::size_t pos = 0;
  int line_no = 0;
  while (pos < text.size()) {
    const auto end = std::min(text.find('\n', pos), text.size());
    const std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (line.empty() || line.front() == '#') continue;
    if (!header_seen) {
      if (line != kCsvColumns) throw ConfigError("csv: unexpected column header");
      header_seen = true;
      continue;
    }
    std::vector<std::string_view> cells;
    std::size_t start = 0;
    for (int c = 0; c < 8; ++c) {
      const auto comma = line.find(',', start);
      if (comma == std::string_view::npos) {
        throw ConfigError("csv line " + std::to_string(line_no) + ": too few columns");
      }
      cells.push_back(line.substr(start, comma - start));
      start = comma + 1;
    }
    cells.push_back(line.substr(start));
    auto number = [&](std::string_view cell) { return config::parse_number(cell, "csv"); };
    auto optional = [&](std::string_view cell) -> std::optional<double> {
      if (cell.empty()) return std::nullopt;
      return number(cell);
    };
    ResultRow row;
    row.swept_value = number(cells[0]);
    row.protocol = simulation::parse_protocol(cells[1]);
    row.analytical = optional(cells[2]);
    row.mc_value = optional(cells[3]);
    row.mc_half_width = optional(cells[4]);
    row.trials = static_cast<std::int64_t>(number(cells[5]));
    row.wall_time_s = number(cells[6]);
    row.solved_value = optional(cells[7]);
    row.status = std::string(cells[8]);
    rows.push_back(std::move(row));
  }
  if (!header_seen) throw ConfigError("csv: missing column header");
  return rows;
}

std::vector<ResultRow> read_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_csv(buffer.str());
}

}  // namespace hybridrelay::experiments
