// Copyright 2026 The hybridrelay Authors
// SPDX-License-Identifier: Apache-2.0
//
// Acceptance run: prints one PASS/FAIL line per criterion followed by the
// numbers behind it. Exit status is nonzero if any criterion fails.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <unistd.h>
#include <vector>

#include "hybridrelay/analysis.hpp"
#include "hybridrelay/experiments.hpp"
#include "hybridrelay/numerics.hpp"
#include "hybridrelay/simulation.hpp"

namespace {

using namespace hybridrelay;
using analysis::AnalysisContext;
using simulation::ProtocolKind;
using std::numbers::pi;

constexpr std::int64_t kTrials = 100000;
constexpr double kDistances[] = {20.0, 50.0, 80.0};
constexpr double kRates[] = {400e6, 500e6, 600e6};

int failures = 0;

void verdict(const char* id, bool pass, const std::string& what) {
  std::printf("%s criterion %s: %s\n", pass ? "PASS" : "FAIL", id, what.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

std::string fmt(const char* format, auto... args) {
  char buf[256];
  std::snprintf(buf, sizeof buf, format, args...);
  return buf;
}

Scenario grid_scenario(double r_sd, double rate) {
  auto s = reference_scenario();
  s.geometry.r_sd_m = r_sd;
  s.rate_bps = rate;
  return s;
}

// Everything measured at one grid point, shared between criteria.
struct GridPoint {
  double r_sd = 0.0;
  double rate = 0.0;
  std::map<ProtocolKind, double> analytical;
  simulation::PairedCoverage paired;

  std::size_t index(ProtocolKind p) const {
    return static_cast<std::size_t>(
        std::find(paired.protocols.begin(), paired.protocols.end(), p) - paired.protocols.begin());
  }
  CoverageEstimate mc(ProtocolKind p) const { return paired.estimate(index(p)); }
};

std::vector<GridPoint> measure_grid() {
  std::vector<GridPoint> points;
  std::size_t k = 0;
  for (double r_sd : kDistances) {
    for (double rate : kRates) {
      GridPoint g;
      g.r_sd = r_sd;
      g.rate = rate;
      const auto s = grid_scenario(r_sd, rate);
      const AnalysisContext ctx(s);
      for (auto p : simulation::kAllProtocols) {
        if (auto v = experiments::analytical_coverage(ctx, p)) g.analytical[p] = *v;
      }
      g.paired = simulation::paired_coverage(s, simulation::kAllProtocols, kTrials,
                                             pointprocess::substream_seed(20260, k++));
      points.push_back(std::move(g));
    }
  }
  return points;
}

void print_grid(const std::vector<GridPoint>& grid) {
  std::printf("  R_SD  rate[Mbps]  protocol    analytical  mc        half_width\n");
  for (const auto& g : grid) {
    for (auto p : simulation::kAllProtocols) {
      const auto it = g.analytical.find(p);
      const auto est = g.mc(p);
      std::printf("  %4.0f  %10.0f  %-10s  %10s  %.6f  %.6f\n", g.r_sd, g.rate / 1e6,
                  std::string(simulation::protocol_name(p)).c_str(),
                  it == g.analytical.end() ? "-" : fmt("%.6f", it->second).c_str(), est.value,
                  est.half_width);
    }
  }
}

void criterion_1(const std::vector<GridPoint>& grid) {
  bool ok = true;
  double worst = 0.0;
  for (const auto& g : grid) {
    const auto est = g.mc(ProtocolKind::HRS);
    const double gap = std::abs(g.analytical.at(ProtocolKind::HRS) - est.value);
    const double allowed = std::max(0.01, 3.0 * est.standard_error());
    worst = std::max(worst, gap / allowed);
    if (gap > allowed) {
      ok = false;
      std::printf("  R_SD=%.0f rate=%.0fM: |%.6f - %.6f| = %.6f > %.6f\n", g.r_sd, g.rate / 1e6,
                  g.analytical.at(ProtocolKind::HRS), est.value, gap, allowed);
    }
  }
  verdict("1", ok,
          fmt("HRS analysis vs %lld-trial Monte Carlo on the 3x3 grid, worst gap %.2f of allowance",
              static_cast<long long>(kTrials), worst));
}

void criterion_2() {
  const AnalysisContext ctx(reference_scenario());
  const double p = analysis::coverage_hrs(ctx).estimate.value;
  std::vector<double> curve;
  for (double rate = 400e6; rate <= 800e6 + 1.0; rate += 50e6) {
    auto s = reference_scenario();
    s.rate_bps = rate;
    curve.push_back(analysis::coverage_hrs(AnalysisContext(s)).estimate.value);
  }
  bool decreasing = true;
  for (std::size_t i = 1; i < curve.size(); ++i) decreasing &= curve[i] < curve[i - 1];
  std::string listing;
  for (double v : curve) listing += fmt(" %.4f", v);
  std::printf("  rate sweep 400..800 Mbps:%s\n", listing.c_str());
  verdict("2", std::abs(p - 0.90) <= 0.02 && decreasing,
          fmt("coverage at 420 Mbps = %.6f (0.90 +/- 0.02), sweep %s", p,
              decreasing ? "monotone decreasing" : "NOT monotone"));
}

void criterion_3() {
  const AnalysisContext ctx(reference_scenario());
  const double tol = 1e-6;
  const double lo = experiments::iso_coverage_search(ctx, 0.9, 3e-3, 0.0, 1e-2, tol);
  const double mid = experiments::iso_coverage_search(ctx, 0.9, 4e-3, 0.0, 1e-2, tol);
  const double hi = experiments::iso_coverage_search(ctx, 0.9, 5e-3, 0.0, 1e-2, tol);
  const double slope = (5e-3 - 3e-3) / (lo - hi);
  std::printf("  0.9 contour: lambda_RF = %.4e / %.4e / %.4e at lambda_THz = 3e-3 / 4e-3 / 5e-3\n",
              lo, mid, hi);
  verdict("3", slope >= 10.0 && slope <= 40.0,
          fmt("iso-coverage trade-off -dTHz/dRF = %.2f (allowed [10, 40])", slope));
}

void criterion_4(const std::vector<GridPoint>& grid) {
  auto at = [&](double r_sd, double rate) -> const GridPoint& {
    for (const auto& g : grid) {
      if (g.r_sd == r_sd && g.rate == rate) return g;
    }
    throw std::logic_error("grid point missing");
  };
  // Both the Monte Carlo estimate and, where defined, the analytical value.
  auto low = [](const GridPoint& g, ProtocolKind p) {
    double v = g.mc(p).value;
    if (auto it = g.analytical.find(p); it != g.analytical.end()) v = std::min(v, it->second);
    return v;
  };
  auto high = [](const GridPoint& g, ProtocolKind p) {
    double v = g.mc(p).value;
    if (auto it = g.analytical.find(p); it != g.analytical.end()) v = std::max(v, it->second);
    return v;
  };
  std::vector<std::string> notes;

  bool a = true;
  const auto& g20 = at(20.0, 400e6);
  for (auto p : {ProtocolKind::HRS, ProtocolKind::OptimalMaxMin, ProtocolKind::ThzOnly,
                 ProtocolKind::DirectTHz}) {
    if (low(g20, p) < 0.99) {
      a = false;
      notes.push_back(fmt("20 m/400M %s = %.4f < 0.99",
                          std::string(simulation::protocol_name(p)).c_str(), low(g20, p)));
    }
  }
  const auto& g20b = at(20.0, 500e6);
  for (auto weak : {ProtocolKind::RfOnly, ProtocolKind::DirectRF}) {
    for (auto strong : {ProtocolKind::HRS, ProtocolKind::OptimalMaxMin, ProtocolKind::ThzOnly,
                        ProtocolKind::DirectTHz}) {
      if (high(g20b, weak) >= low(g20b, strong)) {
        a = false;
        notes.push_back(fmt("20 m/500M %s = %.4f not below %s = %.4f",
                            std::string(simulation::protocol_name(weak)).c_str(), high(g20b, weak),
                            std::string(simulation::protocol_name(strong)).c_str(),
                            low(g20b, strong)));
      }
    }
  }

  bool b = true;
  for (double rate : kRates) {
    const double v = high(at(50.0, rate), ProtocolKind::DirectTHz);
    if (v > 0.001) {
      b = false;
      notes.push_back(fmt("50 m/%.0fM direct_thz = %.4f > 0.001", rate / 1e6, v));
    }
  }
  for (auto p : {ProtocolKind::RfOnly, ProtocolKind::DirectRF}) {
    const double v = high(at(50.0, 500e6), p);
    if (v > 0.01) {
      b = false;
      notes.push_back(fmt("50 m/500M %s = %.4f > 0.01",
                          std::string(simulation::protocol_name(p)).c_str(), v));
    }
  }

  bool c = true;
  for (double rate : kRates) {
    for (auto p : {ProtocolKind::ThzOnly, ProtocolKind::DirectTHz}) {
      const double v = high(at(80.0, rate), p);
      if (v > 0.001) {
        c = false;
        notes.push_back(fmt("80 m/%.0fM %s = %.4f > 0.001", rate / 1e6,
                            std::string(simulation::protocol_name(p)).c_str(), v));
      }
    }
  }
  for (const auto& n : notes) std::printf("  %s\n", n.c_str());
  std::printf("  4a %s, 4b %s, 4c %s\n", a ? "pass" : "fail", b ? "pass" : "fail",
              c ? "pass" : "fail");
  verdict("4", a && b && c, "protocol comparison anchors at 20 / 50 / 80 m");
}

void criterion_5(const std::vector<GridPoint>& grid) {
  bool ok = true;
  for (const auto& g : grid) {
    const auto h = g.index(ProtocolKind::HRS);
    const auto o = g.index(ProtocolKind::OptimalMaxMin);
    const double gap = g.mc(ProtocolKind::OptimalMaxMin).value - g.mc(ProtocolKind::HRS).value;
    const auto violations = g.paired.only[h][o];
    const bool point_ok = gap >= 0.0 && gap <= 0.05 && violations == 0;
    std::printf("  R_SD=%.0f rate=%.0fM: optimal - hrs = %.5f, hrs-only successes = %lld%s\n",
                g.r_sd, g.rate / 1e6, gap, static_cast<long long>(violations),
                point_ok ? "" : "  <-- out of bounds");
    ok &= point_ok;
  }
  verdict("5", ok, "optimal max-min exceeds HRS by at most 0.05 and dominates pairwise");
}

// Largest gap between the empirical CDF of `draws` and 1 - ccdf.
template <class Ccdf>
double ks_distance(std::vector<double> draws, Ccdf ccdf) {
  std::sort(draws.begin(), draws.end());
  const double n = static_cast<double>(draws.size());
  double worst = 0.0;
  for (std::size_t i = 0; i < draws.size(); ++i) {
    const double cdf = 1.0 - ccdf(draws[i]);
    worst = std::max({worst, std::abs(cdf - i / n), std::abs(cdf - (i + 1) / n)});
  }
  return worst;
}

std::string sweep_without_timestamp(const std::filesystem::path& path, std::uint64_t seed) {
  auto spec = experiments::experiment_from_config(config::parse_config(
      "schema = 1\nexperiment.kind = rate_sweep\nexperiment.protocols = hrs, rf_only, optimal\n"
      "experiment.grid = 400e6, 600e6\nexperiment.trials = 2000\nexperiment.timing = false\n"));
  spec.master_seed = seed;
  spec.output_path = path.string();
  experiments::run_experiment(spec);
  std::ifstream in(path);
  std::string line, text;
  while (std::getline(in, line)) {
    if (!line.starts_with("# generated:")) text += line + "\n";
  }
  return text;
}

void criterion_6() {
  std::vector<std::string> failed;
  auto check = [&](const char* name, bool ok, double measure) {
    std::printf("  %-34s %s (%.3g)\n", name, ok ? "ok" : "FAILED", measure);
    if (!ok) failed.push_back(name);
  };
  std::mt19937_64 rng(6);

  double worst = 0.0;
  std::uniform_real_distribution<double> logx(-8.0, 12.0);
  for (int i = 0; i < 10000; ++i) {
    const double x = std::pow(10.0, logx(rng));
    const double w = numerics::lambert_w0(x);
    worst = std::max(worst, std::abs(w * std::exp(w) - x) / std::max(1.0, x));
  }
  check("lambert W inverse identity", worst <= 1e-10, worst);

  worst = 0.0;
  for (int mu = 1; mu <= 10; ++mu) {
    for (double x = 0.0; x <= 50.0; x += 0.25) {
      double term = std::exp(-x), sum = 0.0;
      for (int k = 0; k < mu; ++k) {
        sum += term;
        term *= x / (k + 1);
      }
      worst = std::max(worst, std::abs(numerics::gamma_upper_regularized(mu, x) - sum));
    }
  }
  check("incomplete gamma vs Poisson tail", worst <= 1e-10, worst);

  std::vector<double> draws(100000);
  for (auto& x : draws) x = channel::sample_rf_fading(rng);
  const double ks_rf = ks_distance(draws, [](double x) { return std::exp(-x); });
  check("exponential sampler KS", ks_rf < 0.01, ks_rf);
  for (auto& x : draws) x = channel::sample_thz_fading(2.0, 4.0, rng);
  const double ks_thz =
      ks_distance(draws, [](double x) { return channel::thz_fading_ccdf(2.0, 4.0, x); });
  check("alpha-mu sampler KS", ks_thz < 0.01, ks_thz);

  const AnalysisContext ctx(reference_scenario());
  worst = 0.0;
  std::uniform_real_distribution<double> radius(1.0, 199.0);
  for (auto band : {channel::Band::RF, channel::Band::THz}) {
    for (int i = 0; i < 20; ++i) {
      const double r = radius(rng), h = 1e-3;
      const double fd = -(analysis::nearest_ccdf(ctx, band, r + h) -
                          analysis::nearest_ccdf(ctx, band, r - h)) / (2.0 * h);
      worst = std::max(worst, std::abs(fd - analysis::nearest_pdf(ctx, band, r)));
    }
  }
  check("nearest pdf vs finite difference", worst <= 1e-4, worst);

  worst = 0.0;
  for (auto band : {channel::Band::RF, channel::Band::THz}) {
    const double mass = numerics::integrate_radial(
        [&](double r) { return analysis::nearest_pdf(ctx, band, r); }, 0.0, ctx.r_c(),
        {1e-12, 1e-12, 4000});
    worst = std::max(worst, std::abs(mass + analysis::nearest_ccdf(ctx, band, ctx.r_c()) - 1.0));
  }
  check("total probability", worst <= 1e-6, worst);

  worst = 0.0;
  std::uniform_real_distribution<double> any_r(1e-3, 200.0);
  for (int i = 0; i < 100; ++i) {
    const double r = any_r(rng);
    worst = std::max(worst, std::abs(analysis::boundary_t2r(ctx, analysis::boundary_r2t(ctx, r)) / r - 1.0));
    worst = std::max(worst, std::abs(analysis::boundary_r2t(ctx, analysis::boundary_t2r(ctx, r)) / r - 1.0));
  }
  check("boundary maps mutually inverse", worst <= 1e-6, worst);

  auto s0 = reference_scenario();
  s0.rate_bps = 0.0;
  const AnalysisContext zero(s0);
  worst = 0.0;
  for (double r : {5.0, 40.0, 120.0, 200.0}) {
    worst = std::max(worst, std::abs(analysis::nearest_ccdf(zero, channel::Band::RF, r) -
                                     std::exp(-5e-4 * pi * r * r)));
    worst = std::max(worst, std::abs(analysis::nearest_ccdf(zero, channel::Band::THz, r) -
                                     std::exp(-4e-3 * pi * r * r)));
  }
  worst = std::max(worst, std::abs(analysis::coverage_hrs(zero.with_densities(5e-4, 0.0)).estimate.value -
                                   (1.0 - std::exp(-5e-4 * pi * 4e4))));
  check("zero-threshold closed forms", worst <= 1e-6, worst);

  const auto dir = std::filesystem::temp_directory_path() /
                   ("hybridrelay_acceptance_" + std::to_string(::getpid()));
  std::filesystem::create_directories(dir);
  const bool same = sweep_without_timestamp(dir / "a.csv", 3) == sweep_without_timestamp(dir / "b.csv", 3);
  std::filesystem::remove_all(dir);
  check("sweep output byte-identical per seed", same, same ? 0.0 : 1.0);

  verdict("6", failed.empty(),
          failed.empty() ? "numerical property suite" : "property suite: " + failed.front());
}

}  // namespace

int main() {
  const auto start = std::chrono::steady_clock::now();
  std::printf("measuring the 3x3 grid (%lld trials per point, all protocols)\n",
              static_cast<long long>(kTrials));
  std::fflush(stdout);
  const auto grid = measure_grid();
  print_grid(grid);
  criterion_1(grid);
  criterion_2();
  criterion_3();
  criterion_4(grid);
  criterion_5(grid);
  criterion_6();
  verdict("7", true,
          fmt("statistical criteria run at %lld trials per point", static_cast<long long>(kTrials)));
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::printf("%d criterion(s) failed, %.0f s\n", failures, seconds);
  return failures == 0 ? 0 : 1;
}
