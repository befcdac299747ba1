// Copyright 2026 The hybridrelay Authors
// SPDX-License-Identifier: Apache-2.0
#include "hybridrelay/pointprocess.hpp"

#include <algorithm>

#include "hybridrelay/errors.hpp"

namespace hybridrelay::pointprocess {

void NetworkGeometry::validate() const {
  if (!(r_c_m > 0.0)) throw DomainError("geometry: disc radius must be positive");
  if (!(r_sd_m >= 0.0)) throw DomainError("geometry: source distance must be nonnegative");
  if (!(density_rf >= 0.0) || !(density_thz >= 0.0)) {
    throw DomainError("geometry: relay densities must be nonnegative");
  }
}

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t substream_seed(std::uint64_t master, std::uint64_t index) {
  return mix64(mix64(master) ^ mix64(index + 0x632be59bd9b4e019ULL));
}

double distance_to_source(double rho, double theta, double r_sd) {
  const double sq = rho * rho + r_sd * r_sd - 2.0 * rho * r_sd * std::cos(theta);
  return std::sqrt(std::max(sq, 0.0));
}

}  // namespace hybridrelay::pointprocess
