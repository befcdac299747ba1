// Copyright 2026 The hybridrelay Authors
// SPDX-License-Identifier: Apache-2.0
//
// hrsrelay: command-line front end.
//
//   hrsrelay analyze  [-c FILE] [--set KEY=VALUE]... [--tol X]
//   hrsrelay simulate [-c FILE] [--set KEY=VALUE]... [-p PROTOCOL]... [--trials N] [--seed S]
//   hrsrelay sweep    SPEC [--trials N] [--seed S] [--out FILE] [--tol X] [--no-timing]
//   hrsrelay iso      [-c FILE] [--set KEY=VALUE]... --thz-density D [--target P]
//   hrsrelay defaults
//
// Exit codes: 0 success, 2 configuration error, 3 numerical failure, 4 I/O error.
#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "hybridrelay/analysis.hpp"
#include "hybridrelay/config.hpp"
#include "hybridrelay/errors.hpp"
#include "hybridrelay/experiments.hpp"
#include "hybridrelay/simulation.hpp"

namespace {

using namespace hybridrelay;

enum ExitCode { kOk = 0, kConfigError = 2, kNumericalError = 3, kIoError = 4 };

struct ModelOptions {
  std::string config_path;
  std::vector<std::string> overrides;
  double tol = 0.0;
};

void add_model_options(CLI::App* cmd, ModelOptions& opts) {
  cmd->add_option("-c,--config", opts.config_path, "parameter file (key = value)");
  cmd->add_option("--set", opts.overrides, "override one parameter, e.g. geometry.r_sd_m=80");
  cmd->add_option("--tol", opts.tol, "quadrature absolute tolerance");
}

config::ModelConfig load_model(const ModelOptions& opts) {
  config::ModelConfig model;
  if (!opts.config_path.empty()) {
    model = config::model_from_config(config::load_config_file(opts.config_path));
  }
  for (const auto& item : opts.overrides) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw ConfigError("--set expects KEY=VALUE, got '" + item + "'");
    const std::string key = item.substr(0, eq);
    model.set(key, config::parse_number(item.substr(eq + 1), key));
  }
  if (opts.tol > 0.0) model.quad.abs_tol = opts.tol;
  try {
    model.scenario.validate();
    model.quad.validate();
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
  return model;
}

void print_estimate(const char* label, const CoverageEstimate& est) {
  if (est.provenance == Provenance::MonteCarlo) {
    std::printf("%-12s %.6f +/- %.6f  (%lld trials)\n", label, est.value, est.half_width,
                static_cast<long long>(est.trials));
  } else {
    std::printf("%-12s %.6f\n", label, est.value);
  }
}

int run_analyze(const ModelOptions& opts) {
  const auto model = load_model(opts);
  const analysis::AnalysisContext ctx(model.scenario, model.quad);
  const auto hrs = analysis::coverage_hrs(ctx);
  std::printf("tau_rf       %.6g\ntau_thz      %.6g\n", ctx.threshold(channel::Band::RF),
              ctx.threshold(channel::Band::THz));
  print_estimate("hrs", hrs.estimate);
  std::printf("%-12s %.6f\n%-12s %.6f\n", "  rf part", hrs.rf_part, "  thz part", hrs.thz_part);
  print_estimate("rf_only", analysis::coverage_single_band(ctx, channel::Band::RF));
  print_estimate("thz_only", analysis::coverage_single_band(ctx, channel::Band::THz));
  print_estimate("direct_rf", analysis::coverage_direct(ctx, channel::Band::RF));
  print_estimate("direct_thz", analysis::coverage_direct(ctx, channel::Band::THz));
  return kOk;
}

int run_simulate(const ModelOptions& opts, std::vector<std::string> protocols,
                 std::int64_t trials, std::uint64_t seed, unsigned workers) {
  const auto model = load_model(opts);
  if (protocols.empty()) protocols = {"hrs"};
  std::vector<simulation::ProtocolKind> kinds;
  for (const auto& name : protocols) {
    if (name == "all") {
      kinds.assign(std::begin(simulation::kAllProtocols), std::end(simulation::kAllProtocols));
    } else {
      kinds.push_back(simulation::parse_protocol(name));
    }
  }
  const auto paired = simulation::paired_coverage(model.scenario, kinds, trials, seed, workers);
  for (std::size_t i = 0; i < kinds.size(); ++i) {
    print_estimate(std::string(simulation::protocol_name(kinds[i])).c_str(), paired.estimate(i));
  }
  return kOk;
}

int run_sweep(const std::string& path, std::int64_t trials, std::uint64_t seed,
              const std::string& out, double tol, bool no_timing, unsigned workers) {
  auto spec = experiments::experiment_from_config(config::load_config_file(path));
  if (trials > 0) spec.trials = trials;
  if (seed != 0) spec.master_seed = seed;
  if (!out.empty()) spec.output_path = out;
  if (tol > 0.0) spec.base.quad.abs_tol = tol;
  if (no_timing) spec.record_timing = false;
  if (workers > 0) spec.workers = workers;
  const auto rows = experiments::run_experiment(spec);
  if (spec.output_path.empty()) {
    std::cout << experiments::render_csv(spec, rows, "-");
  } else {
    std::fprintf(stderr, "wrote %zu rows to %s\n", rows.size(), spec.output_path.c_str());
  }
  for (const auto& row : rows) {
    if (row.status != "ok") return kNumericalError;
  }
  return kOk;
}

int run_iso(const ModelOptions& opts, double target, double density_thz, double lo, double hi,
            double coverage_tol) {
  const auto model = load_model(opts);
  const analysis::AnalysisContext ctx(model.scenario, model.quad);
  const double density_rf =
      experiments::iso_coverage_search(ctx, target, density_thz, lo, hi, coverage_tol);
  const double achieved =
      analysis::coverage_hrs(ctx.with_densities(density_rf, density_thz)).estimate.value;
  std::printf("density_thz_per_m2 %.6g\ndensity_rf_per_m2  %.6g\ncoverage           %.6f\n",
              density_thz, density_rf, achieved);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hybrid RF/THz relay selection: analytical and Monte Carlo coverage"};
  app.require_subcommand(1);
  app.set_version_flag("--version", HYBRIDRELAY_VERSION);

  ModelOptions analyze_opts;
  auto* analyze = app.add_subcommand("analyze", "analytical coverage at one operating point");
  add_model_options(analyze, analyze_opts);

  ModelOptions simulate_opts;
  std::vector<std::string> protocols;
  std::int64_t trials = 100000;
  std::uint64_t seed = 1;
  unsigned workers = 0;
  auto* simulate = app.add_subcommand("simulate", "Monte Carlo coverage at one operating point");
  add_model_options(simulate, simulate_opts);
  simulate->add_option("-p,--protocol", protocols,
                       "hrs, optimal, rf_only, thz_only, direct_rf, direct_thz or all");
  simulate->add_option("--trials", trials, "network realizations")->check(CLI::PositiveNumber);
  simulate->add_option("--seed", seed, "master seed");
  simulate->add_option("--threads", workers, "worker threads (0 = all cores)");

  std::string spec_path;
  std::string out_path;
  std::int64_t sweep_trials = 0;
  std::uint64_t sweep_seed = 0;
  double sweep_tol = 0.0;
  bool no_timing = false;
  unsigned sweep_workers = 0;
  auto* sweep = app.add_subcommand("sweep", "run an experiment file and write CSV");
  sweep->add_option("spec", spec_path, "experiment file")->required();
  sweep->add_option("--trials", sweep_trials, "override experiment.trials");
  sweep->add_option("--seed", sweep_seed, "override experiment.seed");
  sweep->add_option("--out", out_path, "override experiment.output");
  sweep->add_option("--tol", sweep_tol, "quadrature absolute tolerance");
  sweep->add_flag("--no-timing", no_timing, "write 0 in the wall_time_s column");
  sweep->add_option("--threads", sweep_workers, "worker threads (0 = all cores)");

  ModelOptions iso_opts;
  double target = 0.9;
  double density_thz = 4e-3;
  std::vector<double> bracket = {0.0, 1e-2};
  double coverage_tol = 1e-3;
  auto* iso = app.add_subcommand("iso", "RF density reaching a target coverage");
  add_model_options(iso, iso_opts);
  iso->add_option("--target", target, "target coverage probability");
  iso->add_option("--thz-density", density_thz, "THz relay density per m^2");
  iso->add_option("--bracket", bracket, "RF density search interval")->expected(2);
  iso->add_option("--coverage-tol", coverage_tol, "stop when |P - target| is below this");

  auto* defaults = app.add_subcommand("defaults", "print the default parameter file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfigError;
  }

  try {
    if (*analyze) return run_analyze(analyze_opts);
    if (*simulate) return run_simulate(simulate_opts, protocols, trials, seed, workers);
    if (*sweep) {
      return run_sweep(spec_path, sweep_trials, sweep_seed, out_path, sweep_tol, no_timing,
                       sweep_workers);
    }
    if (*iso) {
      return run_iso(iso_opts, target, density_thz, bracket.at(0), bracket.at(1), coverage_tol);
    }
    if (*defaults) {
      std::cout << config::default_config_text();
      return kOk;
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const IoError& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return kIoError;
  } catch (const NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return kNumericalError;
  } catch (const DomainError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigError;
  }
  return kOk;
}
