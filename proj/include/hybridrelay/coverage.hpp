// Copyright 2026 The hybridrelay Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string_view>

namespace hybridrelay {

enum class Provenance { Analytical, MonteCarlo };

/// A coverage probability together with how it was obtained. For analytical
/// values half_width is the quadrature error target and trials is 0; for Monte
/// Carlo values half_width is the 95% normal-approximation CI half-width.
struct CoverageEstimate {
  double value = 0.0;
  double half_width = 0.0;
  std::int64_t trials = 0;
  Provenance provenance = Provenance::Analytical;

  /// Binomial standard error sqrt(p (1 - p) / n); 0 for analytical values.
  double standard_error() const;
};

CoverageEstimate monte_carlo_estimate(std::int64_t successes, std::int64_t trials);

std::string_view provenance_name(Provenance p);

}  // namespace hybridrelay
