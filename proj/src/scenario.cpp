// Copyright 2026 The hybridrelay Authors
// SPDX-License-Identifier: Apache-2.0
#include "hybridrelay/scenario.hpp"

#include "hybridrelay/errors.hpp"

namespace hybridrelay {

using channel::Band;

void Scenario::validate() const {
  if (rf.band != Band::RF || thz.band != Band::THz) {
    throw DomainError("scenario: band parameter blocks are mislabelled");
  }
  rf.validate();
  thz.validate();
  geometry.validate();
  if (!(rate_bps >= 0.0)) throw DomainError("scenario: target rate must be nonnegative");
  if (direct_slots != 1 && direct_slots != 2) {
    throw DomainError("scenario: direct_slots must be 1 or 2");
  }
}

double Scenario::threshold(Band b) const {
  return channel::rate_to_threshold(rate_bps, band(b).bandwidth_hz, 2);
}

double Scenario::direct_threshold(Band b) const {
  return channel::rate_to_threshold(rate_bps, band(b).bandwidth_hz, direct_slots);
}

Scenario reference_scenario() {
  Scenario s;
  s.rf.band = Band::RF;
  s.rf.tx_power_w = 1.0;
  s.rf.antenna_gain = channel::db_to_linear(20.0);
  s.rf.carrier_hz = 2.1e9;
  s.rf.pathloss_exponent = 2.5;
  s.rf.bandwidth_hz = 40e6;
  s.rf.noise_power_w = channel::noise_power(s.rf.bandwidth_hz);

  s.thz.band = Band::THz;
  s.thz.tx_power_w = 1.0;
  s.thz.antenna_gain = channel::db_to_linear(40.0);
  s.thz.carrier_hz = 1.8e12;
  s.thz.absorption_per_m = 0.2;
  s.thz.alpha = 2.0;
  s.thz.mu = 4.0;
  s.thz.bandwidth_hz = 0.5e9;
  s.thz.noise_power_w = channel::noise_power(s.thz.bandwidth_hz);

  s.geometry.r_sd_m = 50.0;
  s.geometry.r_c_m = 200.0;
  s.geometry.density_rf = 5e-4;
  s.geometry.density_thz = 4e-3;
  s.rate_bps = 420e6;
  s.direct_slots = 1;
  return s;
}

}  // namespace hybridrelay
