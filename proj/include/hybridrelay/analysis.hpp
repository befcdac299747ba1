// Copyright 2026 The hybridrelay Authors
// SPDX-License-Identifier: Apache-2.0
//
// Analytical coverage of hybrid relay selection. Relays that can decode the
// source form a dependently thinned (inhomogeneous) PPP per band; the
// destination picks the nearest qualified relay of each band and keeps the one
// with the larger average rate. Everything is evaluated by quadrature on the
// disc of radius R_C, including the association boundaries.
#pragma once

#include <memory>
#include <vector>

#include "hybridrelay/coverage.hpp"
#include "hybridrelay/numerics.hpp"
#include "hybridrelay/scenario.hpp"

namespace hybridrelay::analysis {

using channel::Band;

/// Density-free part of one band's qualified-relay field: the retention
/// probability p(rho, theta) = P[SNR_S >= tau] and its cumulative polar mass
///   M(r) = int_0^r int_0^{2 pi} p(rho, theta) rho dtheta drho,
/// tabulated on a uniform radial grid and interpolated by monotone cubic
/// Hermite splines with exact end-point slopes r * angular_mass(r).
class RetentionProfile {
 public:
  RetentionProfile(const channel::BandParams& params, double threshold, double r_sd,
                   double r_c, const numerics::QuadratureSpec& quad);

  double retention(double rho, double theta) const;
  /// int_0^{2 pi} p(rho, theta) dtheta.
  double angular_mass(double rho) const;
  /// M(r) for 0 <= r <= r_c (interpolated).
  double cumulative_mass(double r) const;
  double r_c() const { return r_c_; }
  std::size_t grid_intervals() const { return mass_.size() - 1; }

 private:
  channel::BandParams params_;
  double threshold_;
  double r_sd_;
  double r_c_;
  double step_;
  numerics::QuadratureSpec angular_quad_;
  std::vector<double> mass_;
  std::vector<double> slope_;
};

/// Immutable evaluation context. Thresholds derive from the scenario's target
/// rate with the relayed (two-slot) map. Retention profiles are built once at
/// construction and shared by copies made through with_densities().
class AnalysisContext {
 public:
  explicit AnalysisContext(const Scenario& scenario, const numerics::QuadratureSpec& quad = {});

  /// Same scenario with other relay densities; reuses the retention profiles.
  AnalysisContext with_densities(double density_rf, double density_thz) const;

  const Scenario& scenario() const { return scenario_; }
  const numerics::QuadratureSpec& quad() const { return quad_; }
  const channel::BandParams& band(Band b) const { return scenario_.band(b); }
  double threshold(Band b) const { return b == Band::RF ? tau_rf_ : tau_thz_; }
  double density(Band b) const { return scenario_.geometry.density(b); }
  double r_c() const { return scenario_.geometry.r_c_m; }
  const RetentionProfile& profile(Band b) const { return b == Band::RF ? *rf_ : *thz_; }

 private:
  Scenario scenario_;
  numerics::QuadratureSpec quad_;
  double tau_rf_;
  double tau_thz_;
  std::shared_ptr<const RetentionProfile> rf_;
  std::shared_ptr<const RetentionProfile> thz_;
};

/// Density of source-qualified RF relays at (rho, theta).
double thinned_density_rf(const AnalysisContext& ctx, double rho, double theta);
/// Density of source-qualified THz relays at (rho, theta).
double thinned_density_thz(const AnalysisContext& ctx, double rho, double theta);

/// Mean number of qualified relays of a band within distance r of D.
double qualified_mass(const AnalysisContext& ctx, Band band, double r);

/// P[no qualified relay of the band within distance r of D].
double nearest_ccdf(const AnalysisContext& ctx, Band band, double r);

/// Density of the distance from D to its nearest qualified relay of the band.
double nearest_pdf(const AnalysisContext& ctx, Band band, double r);

/// THz distance whose average rate equals that of an RF relay at distance r.
double boundary_r2t(const AnalysisContext& ctx, double r);
/// RF distance whose average rate equals that of a THz relay at distance r.
double boundary_t2r(const AnalysisContext& ctx, double r);

/// P[D keeps the RF finalist | its distance is r]: no qualified THz relay
/// inside min(boundary_r2t(r), R_C).
double assoc_prob_rf(const AnalysisContext& ctx, double r);
/// P[D keeps the THz finalist | its distance is r].
double assoc_prob_thz(const AnalysisContext& ctx, double r);

/// assoc_prob_* evaluated as 1 - int_0^R f(rho) drho instead of via the void
/// probability; kept for cross-checking the two forms.
double assoc_prob_integral_form(const AnalysisContext& ctx, Band selected, double r);

struct HrsCoverage {
  double rf_part = 0.0;
  double thz_part = 0.0;
  CoverageEstimate estimate;
};

/// Coverage of hybrid relay selection split into the RF- and THz-associated
/// contributions.
HrsCoverage coverage_hrs(const AnalysisContext& ctx);

/// Coverage when only one band's relays exist (association always succeeds).
CoverageEstimate coverage_single_band(const AnalysisContext& ctx, Band band);

/// Coverage of a direct source -> destination transfer in one band.
CoverageEstimate coverage_direct(const AnalysisContext& ctx, Band band);

}  // namespace hybridrelay::analysis
