// Copyright 2026 The hybridrelay Authors
// SPDX-License-Identifier: Apache-2.0
//
// Link-level models for the two relay bands: free-space factor, thermal noise,
// mean SNR laws, fading samplers and the rate <-> SNR threshold map.
#pragma once

#include <cmath>
#include <random>
#include <string_view>

namespace hybridrelay::channel {

enum class Band { RF, THz };

std::string_view band_name(Band band);

/// Speed of light as fixed by the model (not the CODATA value).
inline constexpr double kSpeedOfLight = 3.0e8;

/// Physical-layer constants of one band. RF links use pathloss_exponent; THz
/// links use absorption_per_m, alpha and mu. Gains are total link gains
/// (both ends combined), linear.
struct BandParams {
  Band band = Band::RF;
  double tx_power_w = 1.0;
  double antenna_gain = 1.0;
  double carrier_hz = 1.0e9;
  double pathloss_exponent = 2.5;  // RF only
  double absorption_per_m = 0.0;   // THz only
  double alpha = 2.0;              // THz only
  double mu = 1.0;                 // THz only
  double bandwidth_hz = 1.0e6;
  double noise_power_w = 1.0e-12;

  void validate() const;

  /// tx_power * gain * free_space_factor / noise: the mean SNR at unit
  /// distance before the distance law is applied.
  double snr_scale() const;
};

/// (c / (4 pi nu))^2.
double free_space_factor(double carrier_hz);

/// Thermal noise -174 dBm/Hz integrated over the bandwidth, in watts.
double noise_power(double bandwidth_hz);

double dbm_to_watts(double dbm);
double watts_to_dbm(double watts);
double db_to_linear(double db);

/// SNR threshold for a target rate when the transfer spans `slots` time slots:
/// 2^(slots * rate / B) - 1. Relayed transfers use 2 slots, direct ones 1.
double rate_to_threshold(double rate_bps, double bandwidth_hz, int slots);

/// Rate delivered at a given SNR: B / slots * log2(1 + snr).
double threshold_to_rate(double snr, double bandwidth_hz, int slots);

/// eps G gamma r^-beta / sigma^2. Returns +inf at r == 0.
double rf_mean_snr(const BandParams& p, double r);

/// eps G gamma exp(-beta r) / (sigma^2 r^2). Returns +inf at r == 0.
double thz_mean_snr(const BandParams& p, double r);

/// Dispatches on p.band.
double mean_snr(const BandParams& p, double r);

/// Probability that an instantaneous SNR at distance r clears the threshold,
/// i.e. P[X * mean_snr(r) >= threshold] under the band's fading law.
double coverage_given_distance(const BandParams& p, double r, double threshold);

/// CCDF of the alpha-mu fading power: Gamma(mu, mu m^(alpha/2)) / Gamma(mu).
double thz_fading_ccdf(double alpha, double mu, double m);

/// Unit-mean exponential (Rayleigh power) fading draw.
template <class Rng>
double sample_rf_fading(Rng& rng) {
  return std::exponential_distribution<double>(1.0)(rng);
}

/// alpha-mu fading draw: G^(2/alpha) with G ~ Gamma(shape mu, rate mu).
template <class Rng>
double sample_thz_fading(double alpha, double mu, Rng& rng);

template <class Rng>
double sample_fading(const BandParams& p, Rng& rng) {
  return p.band == Band::RF ? sample_rf_fading(rng) : sample_thz_fading(p.alpha, p.mu, rng);
}

void check_fading_params(double alpha, double mu);

template <class Rng>
double sample_thz_fading(double alpha, double mu, Rng& rng) {
  check_fading_params(alpha, mu);
  const double g = std::gamma_distribution<double>(mu, 1.0 / mu)(rng);
  return alpha == 2.0 ? g : std::pow(g, 2.0 / alpha);
}

}  // namespace hybridrelay::channel
