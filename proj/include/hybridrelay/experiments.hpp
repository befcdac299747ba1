// Copyright 2026 The hybridrelay Authors
// SPDX-License-Identifier: Apache-2.0
//
// Experiment driver: declarative sweeps over one parameter, iso-coverage
// density search and CSV output.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hybridrelay/analysis.hpp"
#include "hybridrelay/config.hpp"
#include "hybridrelay/simulation.hpp"

namespace hybridrelay::experiments {

using simulation::ProtocolKind;

enum class ExperimentKind { RateSweep, DistanceSweep, PowerSweep, IsoCoverage, SinglePoint };

std::string_view kind_name(ExperimentKind kind);
ExperimentKind parse_kind(std::string_view name);

/// Parameter swept by default for each kind ("" for single_point).
std::string_view default_parameter(ExperimentKind kind);

struct ExperimentSpec {
  ExperimentKind kind = ExperimentKind::SinglePoint;
  std::vector<ProtocolKind> protocols;
  // Key understood by config::ModelConfig::set, or the THz density for
  // iso_coverage.
  std::string parameter;
  std::vector<double> grid;
  config::ModelConfig base;
  std::int64_t trials = 100000;
  std::uint64_t master_seed = 1;
  std::string output_path;
  bool analytical = true;
  bool record_timing = true;
  unsigned workers = 0;
  // iso_coverage only.
  double target = 0.9;
  double bracket_lo = 0.0;
  double bracket_hi = 1e-2;
  double coverage_tol = 1e-3;

  /// Throws ConfigError when the spec is inconsistent.
  void validate() const;
};

/// Reads "experiment.*" keys (kind, protocols, parameter, grid, trials, seed,
/// output, analytical, timing, target, bracket, coverage_tol) together with
/// the model parameters of the same file.
ExperimentSpec experiment_from_config(const config::ConfigFile& file);

struct ResultRow {
  double swept_value = 0.0;
  ProtocolKind protocol = ProtocolKind::HRS;
  std::optional<double> analytical;
  std::optional<double> mc_value;
  std::optional<double> mc_half_width;
  std::int64_t trials = 0;
  double wall_time_s = 0.0;
  // iso_coverage: the RF density found for the row's THz density.
  std::optional<double> solved_value;
  std::string status = "ok";

  bool operator==(const ResultRow&) const = default;
};

/// Column names in file order.
inline constexpr std::string_view kCsvColumns =
    "swept_value,protocol,analytical,mc_value,mc_half_width,trials,wall_time_s,solved_value,"
    "status";

/// Bisection on the RF density so that the analytical HRS coverage reaches
/// `target` (|P - target| < coverage_tol) at the given THz density. The
/// template supplies everything but the densities. Throws NumericalError if
/// the bracket does not straddle the target; returns 0 when RF relays are not
/// needed at all (coverage at zero RF density already meets the target and the
/// bracket starts at 0).
double iso_coverage_search(const analysis::AnalysisContext& ctx_template, double target,
                           double density_thz, double bracket_lo, double bracket_hi,
                           double coverage_tol = 1e-3);

/// Analytical value of a protocol where a closed form exists (all but the
/// max-min benchmark).
std::optional<double> analytical_coverage(const analysis::AnalysisContext& ctx,
                                          ProtocolKind protocol);

/// Seed of the Monte Carlo run for grid point `point` and protocol `protocol`.
std::uint64_t point_seed(std::uint64_t master_seed, std::size_t point, ProtocolKind protocol);

/// Runs every grid point x protocol. Numerical failures are recorded in the
/// row status instead of aborting. If spec.output_path is set the CSV is
/// written atomically.
std::vector<ResultRow> run_experiment(const ExperimentSpec& spec);

/// CSV text: "# "-prefixed metadata (tool version, timestamp, seed, kind,
/// parameter, every model parameter), the column header, then the rows.
std::string render_csv(const ExperimentSpec& spec, const std::vector<ResultRow>& rows,
                       std::string_view timestamp);

/// Writes via a temporary file and rename. Throws IoError.
void write_csv(const std::string& path, const ExperimentSpec& spec,
               const std::vector<ResultRow>& rows);

/// Parses the rows of a CSV produced by render_csv (metadata is skipped).
std::vector<ResultRow> parse_csv(std::string_view text);
std::vector<ResultRow> read_csv(const std::string& path);

}  // namespace hybridrelay::experiments
