// Copyright 2026 The hybridrelay Authors
// SPDX-License-Identifier: Apache-2.0
#include "hybridrelay/channel.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "hybridrelay/errors.hpp"
#include "hybridrelay/numerics.hpp"

namespace hybridrelay::channel {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

std::string_view band_name(Band band) { return band == Band::RF ? "RF" : "THz"; }

void BandParams::validate() const {
  const char* name = band == Band::RF ? "rf" : "thz";
  auto require = [&](bool ok, const char* what) {
    if (!ok) throw DomainError(std::string(name) + ": " + what);
  };
  require(tx_power_w > 0.0, "tx power must be positive");
  require(antenna_gain > 0.0, "antenna gain must be positive");
  require(carrier_hz > 0.0, "carrier frequency must be positive");
  require(bandwidth_hz > 0.0, "bandwidth must be positive");
  require(noise_power_w > 0.0, "noise power must be positive");
  if (band == Band::RF) {
    require(pathloss_exponent > 2.0, "path-loss exponent must exceed 2");
  } else {
    require(absorption_per_m >= 0.0, "absorption coefficient must be nonnegative");
    require(alpha > 0.0 && mu > 0.0, "alpha and mu must be positive");
  }
}

double BandParams::snr_scale() const {
  return tx_power_w * antenna_gain * free_space_factor(carrier_hz) / noise_power_w;
}

double free_space_factor(double carrier_hz) {
  if (!(carrier_hz > 0.0)) throw DomainError("free_space_factor: frequency must be positive");
  const double v = kSpeedOfLight / (4.0 * std::numbers::pi * carrier_hz);
  return v * v;
}

double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }
double watts_to_dbm(double watts) { return 10.0 * std::log10(watts) + 30.0; }
double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

double noise_power(double bandwidth_hz) {
  if (!(bandwidth_hz > 0.0)) throw DomainError("noise_power: bandwidth must be positive");
  return dbm_to_watts(-174.0 + 10.0 * std::log10(bandwidth_hz));
}

double rate_to_threshold(double rate_bps, double bandwidth_hz, int slots) {
  if (!(rate_bps >= 0.0)) throw DomainError("rate_to_threshold: rate must be nonnegative");
  if (!(bandwidth_hz > 0.0)) throw DomainError("rate_to_threshold: bandwidth must be positive");
  if (slots != 1 && slots != 2) throw DomainError("rate_to_threshold: slots must be 1 or 2");
  return std::expm1(std::numbers::ln2 * slots * rate_bps / bandwidth_hz);
}

double threshold_to_rate(double snr, double bandwidth_hz, int slots) {
  return bandwidth_hz / slots * std::log2(1.0 + snr);
}

double rf_mean_snr(const BandParams& p, double r) {
  if (!(r >= 0.0)) throw DomainError("rf_mean_snr: distance must be nonnegative");
  if (r == 0.0) return kInf;
  return p.snr_scale() * std::pow(r, -p.pathloss_exponent);
}

double thz_mean_snr(const BandParams& p, double r) {
  if (!(r >= 0.0)) throw DomainError("thz_mean_snr: distance must be nonnegative");
  if (r == 0.0) return kInf;
  return p.snr_scale() * std::exp(-p.absorption_per_m * r) / (r * r);
}

double mean_snr(const BandParams& p, double r) {
  return p.band == Band::RF ? rf_mean_snr(p, r) : thz_mean_snr(p, r);
}

void check_fading_params(double alpha, double mu) {
  if (!(alpha > 0.0) || !(mu > 0.0)) throw DomainError("alpha-mu fading needs alpha, mu > 0");
}

double thz_fading_ccdf(double alpha, double mu, double m) {
  check_fading_params(alpha, mu);
  if (m <= 0.0) return 1.0;
  return numerics::gamma_upper_regularized(mu, mu * std::pow(m, 0.5 * alpha));
}

double coverage_given_distance(const BandParams& p, double r, double threshold) {
  if (threshold <= 0.0) return 1.0;
  const double snr = mean_snr(p, r);
  if (std::isinf(snr)) return 1.0;
  const double needed_fade = threshold / snr;
  if (p.band == Band::RF) return std::exp(-needed_fade);
  return thz_fading_ccdf(p.alpha, p.mu, needed_fade);
}

}  // namespace hybridrelay::channel
