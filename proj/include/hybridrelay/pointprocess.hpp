// Copyright 2026 The hybridrelay Authors
// SPDX-License-Identifier: Apache-2.0
//
// Relay fields: homogeneous Poisson point processes on the disc centred at the
// destination, plus the seeding rule for reproducible random substreams.
#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include "hybridrelay/channel.hpp"

namespace hybridrelay::pointprocess {

/// Random engine used throughout the simulator.
using Rng = std::mt19937_64;

/// Destination at the origin, source at (r_sd, 0); relays live on the disc of
/// radius r_c around the destination.
struct NetworkGeometry {
  double r_sd_m = 50.0;
  double r_c_m = 200.0;
  double density_rf = 0.0;   // per m^2
  double density_thz = 0.0;  // per m^2

  void validate() const;
  double density(channel::Band band) const {
    return band == channel::Band::RF ? density_rf : density_thz;
  }
};

struct PolarPoint {
  double rho;
  double theta;
};

/// One sampled relay with its per-hop fading draws.
struct RelayRealization {
  channel::Band band;
  double rho;        // distance to the destination
  double theta;      // polar angle, [0, 2 pi)
  double dist_to_s;  // distance to the source
  double fade_s;     // source -> relay fading power
  double fade_d;     // relay -> destination fading power
};

/// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t x);

/// Seed of substream `index` under `master`. Substreams are a pure function of
/// (master, index), so results do not depend on how work is scheduled.
std::uint64_t substream_seed(std::uint64_t master, std::uint64_t index);

inline Rng make_substream(std::uint64_t master, std::uint64_t index) {
  return Rng(substream_seed(master, index));
}

/// Law of cosines: sqrt(rho^2 + r_sd^2 - 2 rho r_sd cos(theta)), clamped at 0.
double distance_to_source(double rho, double theta, double r_sd);

/// Homogeneous PPP of the given density on the disc of radius r_c: Poisson
/// count, then rho = r_c sqrt(U), theta = 2 pi V.
template <class Engine>
std::vector<PolarPoint> sample_ppp(double density, double r_c, Engine& rng) {
  std::vector<PolarPoint> points;
  if (density <= 0.0) return points;
  const double mean = density * std::numbers::pi * r_c * r_c;
  const auto count = std::poisson_distribution<long>(mean)(rng);
  points.reserve(static_cast<std::size_t>(count));
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (long i = 0; i < count; ++i) {
    const double rho = r_c * std::sqrt(unit(rng));
    const double theta = 2.0 * std::numbers::pi * unit(rng);
    points.push_back({rho, theta});
  }
  return points;
}

}  // namespace hybridrelay::pointprocess
