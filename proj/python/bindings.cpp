// Copyright 2026 The hybridrelay Authors
// SPDX-License-Identifier: Apache-2.0
//
// Python bindings for the analytical model, the Monte Carlo engine and the
// experiment driver. Models are described by the same flat keys as the
// parameter files.
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

#include "hybridrelay/analysis.hpp"
#include "hybridrelay/channel.hpp"
#include "hybridrelay/config.hpp"
#include "hybridrelay/errors.hpp"
#include "hybridrelay/experiments.hpp"
#include "hybridrelay/numerics.hpp"
#include "hybridrelay/simulation.hpp"

namespace py = pybind11;
using namespace hybridrelay;

namespace {

config::ModelConfig make_model(const std::map<std::string, double>& params) {
  config::ModelConfig model;
  for (const auto& [key, value] : params) model.set(key, value);
  try {
    model.scenario.validate();
    model.quad.validate();
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
  return model;
}

py::dict estimate_dict(const CoverageEstimate& est) {
  py::dict d;
  d["value"] = est.value;
  d["half_width"] = est.half_width;
  d["trials"] = est.trials;
  d["provenance"] = std::string(provenance_name(est.provenance));
  return d;
}

py::dict analyze(const std::map<std::string, double>& params) {
  const auto model = make_model(params);
  py::gil_scoped_release release;
  const analysis::AnalysisContext ctx(model.scenario, model.quad);
  const auto hrs = analysis::coverage_hrs(ctx);
  const auto rf = analysis::coverage_single_band(ctx, channel::Band::RF);
  const auto thz = analysis::coverage_single_band(ctx, channel::Band::THz);
  const auto drf = analysis::coverage_direct(ctx, channel::Band::RF);
  const auto dthz = analysis::coverage_direct(ctx, channel::Band::THz);
  py::gil_scoped_acquire acquire;
  py::dict out;
  out["hrs"] = hrs.estimate.value;
  out["hrs_rf_part"] = hrs.rf_part;
  out["hrs_thz_part"] = hrs.thz_part;
  out["rf_only"] = rf.value;
  out["thz_only"] = thz.value;
  out["direct_rf"] = drf.value;
  out["direct_thz"] = dthz.value;
  out["tau_rf"] = ctx.threshold(channel::Band::RF);
  out["tau_thz"] = ctx.threshold(channel::Band::THz);
  return out;
}

py::dict simulate(const std::map<std::string, double>& params,
                  const std::vector<std::string>& protocols, std::int64_t trials,
                  std::uint64_t seed, unsigned workers) {
  const auto model = make_model(params);
  if (trials < 1) throw ConfigError("trials must be >= 1");
  std::vector<simulation::ProtocolKind> kinds;
  for (const auto& name : protocols) kinds.push_back(simulation::parse_protocol(name));
  if (kinds.empty()) throw ConfigError("protocol list is empty");
  simulation::PairedCoverage paired;
  {
    py::gil_scoped_release release;
    paired = simulation::paired_coverage(model.scenario, kinds, trials, seed, workers);
  }
  py::dict out;
  for (std::size_t i = 0; i < kinds.size(); ++i) {
    out[py::str(std::string(simulation::protocol_name(kinds[i])))] =
        estimate_dict(paired.estimate(i));
  }
  return out;
}

double iso_coverage(const std::map<std::string, double>& params, double target,
                    double density_thz, double lo, double hi, double tol) {
  const auto model = make_model(params);
  py::gil_scoped_release release;
  const analysis::AnalysisContext ctx(model.scenario, model.quad);
  return experiments::iso_coverage_search(ctx, target, density_thz, lo, hi, tol);
}

py::list rows_to_list(const std::vector<experiments::ResultRow>& rows) {
  py::list out;
  for (const auto& r : rows) {
    py::dict d;
    d["swept_value"] = r.swept_value;
    d["protocol"] = std::string(simulation::protocol_name(r.protocol));
    d["analytical"] = r.analytical;
    d["mc_value"] = r.mc_value;
    d["mc_half_width"] = r.mc_half_width;
    d["trials"] = r.trials;
    d["wall_time_s"] = r.wall_time_s;
    d["solved_value"] = r.solved_value;
    d["status"] = r.status;
    out.append(d);
  }
  return out;
}

py::list run_sweep(const std::string& text, const std::string& output) {
  auto spec = experiments::experiment_from_config(config::parse_config(text));
  if (!output.empty()) spec.output_path = output;
  std::vector<experiments::ResultRow> rows;
  {
    py::gil_scoped_release release;
    rows = experiments::run_experiment(spec);
  }
  return rows_to_list(rows);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Hybrid RF/THz relay selection: analytical and Monte Carlo coverage";
  m.attr("__version__") = HYBRIDRELAY_VERSION;

  auto base = py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<NumericalError>(m, "NumericalError", PyExc_ArithmeticError);
  py::register_exception<IoError>(m, "IoError", PyExc_OSError);
  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  (void)base;

  m.def("default_parameters", [] {
    std::map<std::string, double> out;
    for (const auto& [k, v] : config::ModelConfig{}.echo()) out[k] = v;
    return out;
  }, "Reference parameter set keyed by configuration path.");
  m.def("analyze", &analyze, py::arg("params") = std::map<std::string, double>{},
        "Analytical coverage of every protocol with a closed form.");
  m.def("simulate", &simulate, py::arg("params") = std::map<std::string, double>{},
        py::arg("protocols") = std::vector<std::string>{"hrs"}, py::arg("trials") = 100000,
        py::arg("seed") = 1, py::arg("workers") = 0,
        "Monte Carlo coverage of several protocols on shared realizations.");
  m.def("iso_coverage", &iso_coverage, py::arg("params") = std::map<std::string, double>{},
        py::arg("target") = 0.9, py::arg("density_thz") = 4e-3, py::arg("lo") = 0.0,
        py::arg("hi") = 1e-2, py::arg("tol") = 1e-3,
        "RF relay density at which HRS reaches the target coverage.");
  m.def("run_sweep", &run_sweep, py::arg("text"), py::arg("output") = "",
        "Runs an experiment given as parameter-file text and returns its rows.");
  m.def("lambert_w0", &numerics::lambert_w0, py::arg("x"));
  m.def("gamma_upper_regularized", &numerics::gamma_upper_regularized, py::arg("mu"),
        py::arg("x"));
  m.def("rate_to_threshold", &channel::rate_to_threshold, py::arg("rate_bps"),
        py::arg("bandwidth_hz"), py::arg("slots") = 2);
}
