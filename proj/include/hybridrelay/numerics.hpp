// Copyright 2026 The hybridrelay Authors
// SPDX-License-Identifier: Apache-2.0
//
// Special functions and quadrature used by the analytical coverage model.
#pragma once

#include <functional>

namespace hybridrelay::numerics {

/// Error targets for the adaptive integrators. An estimate is accepted once
/// its error bound is below max(abs_tol, rel_tol * |estimate|).
struct QuadratureSpec {
  double abs_tol = 1e-9;
  double rel_tol = 1e-7;
  int max_subdivisions = 2000;

  void validate() const;
};

using RadialFunction = std::function<double(double)>;
using PolarFunction = std::function<double(double radius, double angle)>;

/// Principal branch of the Lambert W function, w * exp(w) = x with w >= -1.
/// Throws DomainError for x < -1/e.
double lambert_w0(double x);

/// Regularized upper incomplete gamma Q(mu, x) = Gamma(mu, x) / Gamma(mu).
/// Throws DomainError for mu <= 0 or x < 0.
double gamma_upper_regularized(double mu, double x);

/// Adaptive Gauss-Kronrod (7/15) integral of f over [lo, hi].
/// Throws NumericalError when the tolerance is not reached within
/// spec.max_subdivisions interval splits.
double integrate_radial(const RadialFunction& f, double lo, double hi,
                        const QuadratureSpec& spec = {});

/// Integral over 0 <= angle < 2*pi of a smooth 2*pi-periodic function, by the
/// trapezoid rule with node doubling until successive estimates agree.
double integrate_periodic(const RadialFunction& f, const QuadratureSpec& spec = {});

/// Same as integrate_periodic for an integrand even about angle 0 (f(t) ==
/// f(-t)); only [0, pi] is sampled.
double integrate_periodic_even(const RadialFunction& f, const QuadratureSpec& spec = {});

/// Integral over the annulus r_lo <= rho <= r_hi of f(rho, theta) * rho
/// dtheta drho, with theta over the full circle.
double integrate_polar(const PolarFunction& f, double r_lo, double r_hi,
                       const QuadratureSpec& spec = {});

}  // namespace hybridrelay::numerics
