// Copyright 2026 The hybridrelay Authors
// SPDX-License-Identifier: Apache-2.0
#include "hybridrelay/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hybridrelay/errors.hpp"

namespace hybridrelay::analysis {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
// Radial spacing of the cumulative-mass table.
constexpr double kGridStepM = 0.1;
// Interpolation error allowance added to analytical error targets.
constexpr double kInterpolationBudget = 1e-6;
// Outer coverage integrals are split at this spacing so that narrow peaks of
// the distance density are never straddled by a single coarse panel.
constexpr double kPanelM = 10.0;

Band other(Band b) { return b == Band::RF ? Band::THz : Band::RF; }

void check_radius(const AnalysisContext& ctx, double r, const char* who) {
  if (!(r >= 0.0) || r > ctx.r_c() * (1.0 + 1e-12)) {
    throw DomainError(std::string(who) + ": distance must lie in [0, R_C]");
  }
}

double integrate_panels(const numerics::RadialFunction& f, double lo, double hi,
                        const numerics::QuadratureSpec& quad) {
  if (hi <= lo) return 0.0;
  const int panels = std::max(1, static_cast<int>(std::ceil((hi - lo) / kPanelM)));
  numerics::QuadratureSpec per_panel = quad;
  per_panel.abs_tol = quad.abs_tol / panels;
  double total = 0.0;
  for (int i = 0; i < panels; ++i) {
    const double a = lo + (hi - lo) * i / panels;
    const double b = i + 1 == panels ? hi : lo + (hi - lo) * (i + 1) / panels;
    total += numerics::integrate_radial(f, a, b, per_panel);
  }
  return total;
}

double hermite(double m0, double m1, double d0, double d1, double h, double t) {
  const double secant = (m1 - m0) / h;
  if (secant <= 0.0) return m0;
  // Fritsch-Carlson limiter keeps the cubic monotone on the interval.
  const double a = d0 / secant;
  const double b = d1 / secant;
  const double norm = a * a + b * b;
  if (norm > 9.0) {
    const double scale = 3.0 / std::sqrt(norm);
    d0 *= scale;
    d1 *= scale;
  }
  const double t2 = t * t;
  const double t3 = t2 * t;
  return (2 * t3 - 3 * t2 + 1) * m0 + (t3 - 2 * t2 + t) * h * d0 + (-2 * t3 + 3 * t2) * m1 +
         (t3 - t2) * h * d1;
}

}  // namespace

RetentionProfile::RetentionProfile(const channel::BandParams& params, double threshold,
                                   double r_sd, double r_c, const numerics::QuadratureSpec& quad)
    : params_(params), threshold_(threshold), r_sd_(r_sd), r_c_(r_c) {
  quad.validate();
  const auto intervals =
      static_cast<std::size_t>(std::clamp(std::ceil(r_c / kGridStepM), 64.0, 20000.0));
  step_ = r_c / static_cast<double>(intervals);

  // Angular masses are bounded by 2 pi and get weighted by up to R_C^2 / 2 in
  // the radial integral.
  angular_quad_ = quad;
  angular_quad_.abs_tol = std::min(1e-12, quad.abs_tol * 1e-3);
  angular_quad_.rel_tol = std::min(1e-10, quad.rel_tol * 1e-3);

  numerics::QuadratureSpec radial = quad;
  radial.abs_tol = std::min(1e-12, quad.abs_tol / static_cast<double>(intervals));
  radial.rel_tol = std::min(1e-10, quad.rel_tol * 1e-3);

  mass_.assign(intervals + 1, 0.0);
  slope_.assign(intervals + 1, 0.0);
  const auto integrand = [this](double rho) { return rho * angular_mass(rho); };
  for (std::size_t i = 1; i <= intervals; ++i) {
    const double lo = step_ * static_cast<double>(i - 1);
    const double hi = i == intervals ? r_c : step_ * static_cast<double>(i);
    mass_[i] = mass_[i - 1] + numerics::integrate_radial(integrand, lo, hi, radial);
    slope_[i] = integrand(hi);
  }
}

double RetentionProfile::retention(double rho, double theta) const {
  const double r_s = pointprocess::distance_to_source(rho, theta, r_sd_);
  return channel::coverage_given_distance(params_, r_s, threshold_);
}

double RetentionProfile::angular_mass(double rho) const {
  // p(rho, theta) depends on theta only through cos(theta), so it is even.
  return numerics::integrate_periodic_even([&](double theta) { return retention(rho, theta); },
                                           angular_quad_);
}

double RetentionProfile::cumulative_mass(double r) const {
  if (r <= 0.0) return 0.0;
  if (r >= r_c_) return mass_.back();
  const auto i = std::min(static_cast<std::size_t>(r / step_), mass_.size() - 2);
  const double lo = step_ * static_cast<double>(i);
  const double h = (i + 2 == mass_.size() ? r_c_ : lo + step_) - lo;
  return hermite(mass_[i], mass_[i + 1], slope_[i], slope_[i + 1], h, (r - lo) / h);
}

AnalysisContext::AnalysisContext(const Scenario& scenario, const numerics::QuadratureSpec& quad)
    : scenario_(scenario), quad_(quad) {
  scenario_.validate();
  quad_.validate();
  tau_rf_ = scenario_.threshold(Band::RF);
  tau_thz_ = scenario_.threshold(Band::THz);
  const auto& g = scenario_.geometry;
  rf_ = std::make_shared<const RetentionProfile>(scenario_.rf, tau_rf_, g.r_sd_m, g.r_c_m, quad_);
  thz_ =
      std::make_shared<const RetentionProfile>(scenario_.thz, tau_thz_, g.r_sd_m, g.r_c_m, quad_);
}

AnalysisContext AnalysisContext::with_densities(double density_rf, double density_thz) const {
  if (!(density_rf >= 0.0) || !(density_thz >= 0.0)) {
    throw DomainError("with_densities: densities must be nonnegative");
  }
  AnalysisContext copy = *this;
  copy.scenario_.geometry.density_rf = density_rf;
  copy.scenario_.geometry.density_thz = density_thz;
  return copy;
}

double thinned_density_rf(const AnalysisContext& ctx, double rho, double theta) {
  return ctx.density(Band::RF) * ctx.profile(Band::RF).retention(rho, theta);
}

double thinned_density_thz(const AnalysisContext& ctx, double rho, double theta) {
  return ctx.density(Band::THz) * ctx.profile(Band::THz).retention(rho, theta);
}

double qualified_mass(const AnalysisContext& ctx, Band band, double r) {
  check_radius(ctx, r, "qualified_mass");
  const double density = ctx.density(band);
  if (density == 0.0) return 0.0;
  return density * ctx.profile(band).cumulative_mass(r);
}

double nearest_ccdf(const AnalysisContext& ctx, Band band, double r) {
  return std::exp(-qualified_mass(ctx, band, r));
}

double nearest_pdf(const AnalysisContext& ctx, Band band, double r) {
  check_radius(ctx, r, "nearest_pdf");
  const double density = ctx.density(band);
  if (density == 0.0 || r == 0.0) return 0.0;
  const auto& profile = ctx.profile(band);
  return r * density * profile.angular_mass(r) *
         std::exp(-density * profile.cumulative_mass(r));
}

double boundary_r2t(const AnalysisContext& ctx, double r) {
  if (!(r > 0.0)) throw DomainError("boundary_r2t: distance must be positive");
  const auto& rf = ctx.band(Band::RF);
  const auto& thz = ctx.band(Band::THz);
  const double rf_snr = channel::rf_mean_snr(rf, r);
  // THz mean SNR with the same average rate as the RF link.
  const double target = std::expm1(rf.bandwidth_hz / thz.bandwidth_hz * std::log1p(rf_snr));
  if (target <= 0.0) return kInf;
  if (std::isinf(target)) return 0.0;
  const double ratio = thz.snr_scale() / target;
  const double beta = thz.absorption_per_m;
  if (beta == 0.0) return std::sqrt(ratio);
  const double arg = 0.5 * beta * std::sqrt(ratio);
  if (arg < 0.0) throw DomainError("boundary_r2t: Lambert argument out of range");
  return 2.0 / beta * numerics::lambert_w0(arg);
}

double boundary_t2r(const AnalysisContext& ctx, double r) {
  if (!(r > 0.0)) throw DomainError("boundary_t2r: distance must be positive");
  const auto& rf = ctx.band(Band::RF);
  const auto& thz = ctx.band(Band::THz);
  const double thz_snr = channel::thz_mean_snr(thz, r);
  const double target = std::expm1(thz.bandwidth_hz / rf.bandwidth_hz * std::log1p(thz_snr));
  if (target <= 0.0) return kInf;
  if (std::isinf(target)) return 0.0;
  return std::pow(rf.snr_scale() / target, 1.0 / rf.pathloss_exponent);
}

double assoc_prob_rf(const AnalysisContext& ctx, double r) {
  check_radius(ctx, r, "assoc_prob_rf");
  if (r == 0.0) return 1.0;
  return nearest_ccdf(ctx, Band::THz, std::min(boundary_r2t(ctx, r), ctx.r_c()));
}

double assoc_prob_thz(const AnalysisContext& ctx, double r) {
  check_radius(ctx, r, "assoc_prob_thz");
  if (r == 0.0) return 1.0;
  return nearest_ccdf(ctx, Band::RF, std::min(boundary_t2r(ctx, r), ctx.r_c()));
}

double assoc_prob_integral_form(const AnalysisContext& ctx, Band selected, double r) {
  check_radius(ctx, r, "assoc_prob_integral_form");
  if (r == 0.0) return 1.0;
  const double boundary =
      selected == Band::RF ? boundary_r2t(ctx, r) : boundary_t2r(ctx, r);
  const Band rival = other(selected);
  const double upper = std::min(boundary, ctx.r_c());
  return 1.0 - integrate_panels([&](double rho) { return nearest_pdf(ctx, rival, rho); }, 0.0,
                                upper, ctx.quad());
}

HrsCoverage coverage_hrs(const AnalysisContext& ctx) {
  HrsCoverage out;
  const double r_c = ctx.r_c();
  if (ctx.density(Band::RF) > 0.0) {
    const auto& rf = ctx.band(Band::RF);
    const double tau = ctx.threshold(Band::RF);
    out.rf_part = integrate_panels(
        [&](double rho) {
          if (rho == 0.0) return 0.0;
          return nearest_pdf(ctx, Band::RF, rho) * channel::coverage_given_distance(rf, rho, tau) *
                 assoc_prob_rf(ctx, rho);
        },
        0.0, r_c, ctx.quad());
  }
  if (ctx.density(Band::THz) > 0.0) {
    const auto& thz = ctx.band(Band::THz);
    const double tau = ctx.threshold(Band::THz);
    out.thz_part = integrate_panels(
        [&](double rho) {
          if (rho == 0.0) return 0.0;
          return nearest_pdf(ctx, Band::THz, rho) *
                 channel::coverage_given_distance(thz, rho, tau) * assoc_prob_thz(ctx, rho);
        },
        0.0, r_c, ctx.quad());
  }
  const double total = std::clamp(out.rf_part + out.thz_part, 0.0, 1.0);
  out.estimate.value = total;
  out.estimate.half_width =
      std::max(ctx.quad().abs_tol, ctx.quad().rel_tol * total) + kInterpolationBudget;
  out.estimate.provenance = Provenance::Analytical;
  return out;
}

CoverageEstimate coverage_single_band(const AnalysisContext& ctx, Band band) {
  CoverageEstimate est;
  if (ctx.density(band) > 0.0) {
    const auto& params = ctx.band(band);
    const double tau = ctx.threshold(band);
    est.value = integrate_panels(
        [&](double rho) {
          if (rho == 0.0) return 0.0;
          return nearest_pdf(ctx, band, rho) * channel::coverage_given_distance(params, rho, tau);
        },
        0.0, ctx.r_c(), ctx.quad());
    est.value = std::clamp(est.value, 0.0, 1.0);
  }
  est.half_width = std::max(ctx.quad().abs_tol, ctx.quad().rel_tol * est.value) +
                   kInterpolationBudget;
  return est;
}

CoverageEstimate coverage_direct(const AnalysisContext& ctx, Band band) {
  CoverageEstimate est;
  const auto& s = ctx.scenario();
  est.value = channel::coverage_given_distance(s.band(band), s.geometry.r_sd_m,
                                               s.direct_threshold(band));
  est.half_width = 0.0;
  return est;
}

}  // namespace hybridrelay::analysis
