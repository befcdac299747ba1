// Copyright 2026 The hybridrelay Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "hybridrelay/channel.hpp"
#include "hybridrelay/pointprocess.hpp"

namespace hybridrelay {

/// Complete parameter set of one operating point: both bands, the geometry
/// and the end-to-end target rate shared by every protocol.
struct Scenario {
  channel::BandParams rf;
  channel::BandParams thz;
  pointprocess::NetworkGeometry geometry;
  double rate_bps = 420e6;
  // Time slots charged to a direct source -> destination transfer.
  int direct_slots = 1;

  void validate() const;

  const channel::BandParams& band(channel::Band b) const {
    return b == channel::Band::RF ? rf : thz;
  }
  /// Relayed (two-slot) SNR threshold of a band.
  double threshold(channel::Band b) const;
  /// SNR threshold of a direct transfer in band b.
  double direct_threshold(channel::Band b) const;
};

/// Default operating point: 1 W per band, 20/40 dBi
/// total gains, 2.1 GHz / 1.8 THz carriers, 40 MHz / 0.5 GHz bandwidths,
/// thermal noise, R_C = 200 m, R_SD = 50 m, 420 Mbps, densities 5e-4 / 4e-3.
Scenario reference_scenario();

}  // namespace hybridrelay
