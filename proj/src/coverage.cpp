// Copyright 2026 The hybridrelay Authors
// SPDX-License-Identifier: Apache-2.0
#include "hybridrelay/coverage.hpp"

#include <cmath>

namespace hybridrelay {

double CoverageEstimate::standard_error() const {
  if (provenance != Provenance::MonteCarlo || trials <= 0) return 0.0;
  return std::sqrt(value * (1.0 - value) / static_cast<double>(trials));
}

CoverageEstimate monte_carlo_estimate(std::int64_t successes, std::int64_t trials) {
  CoverageEstimate est;
  est.provenance = Provenance::MonteCarlo;
  est.trials = trials;
  est.value = trials > 0 ? static_cast<double>(successes) / static_cast<double>(trials) : 0.0;
  est.half_width = 1.96 * est.standard_error();
  return est;
}

std::string_view provenance_name(Provenance p) {
  return p == Provenance::Analytical ? "analytical" : "monte_carlo";
}

}  // namespace hybridrelay
