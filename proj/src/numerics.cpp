// Copyright 2026 The hybridrelay Authors
// SPDX-License-Identifier: Apache-2.0
#include "hybridrelay/numerics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>
#include <string>
#include <vector>

#include "hybridrelay/errors.hpp"

namespace hybridrelay::numerics {

namespace {

constexpr double kInvE = 0.36787944117144232159552377016146;

double lambert_initial_guess(double x) {
  if (x < -0.32) {
    // Series about the branch point in p = sqrt(2 (e x + 1)).
    const double p = std::sqrt(2.0 * (std::numbers::e * x + 1.0));
    return -1.0 + p * (1.0 + p * (-1.0 / 3.0 + p * (11.0 / 72.0)));
  }
  if (x < 3.0) {
    return std::log1p(x) * (1.0 - std::log1p(std::log1p(x)) / (2.0 + std::log1p(x)));
  }
  const double l1 = std::log(x);
  const double l2 = std::log(l1);
  return l1 - l2 + l2 / l1;
}

// Gauss-Kronrod 7/15 abscissae and weights on [-1, 1].
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
  double lo;
  double hi;
  double value;
  double error;
  bool operator<(const Segment& other) const { return error < other.error; }
};

Segment gauss_kronrod(const RadialFunction& f, double lo, double hi) {
  const double center = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  const double f_center = f(center);
  double kronrod = f_center * kWgk[7];
  double gauss = f_center * kWg[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    const double sum = f(center - dx) + f(center + dx);
    kronrod += kWgk[j] * sum;
    if (j % 2 == 1) gauss += kWg[j / 2] * sum;
  }
  const double value = kronrod * half;
  const double error = std::abs((kronrod - gauss) * half);
  if (!std::isfinite(value)) {
    throw NumericalError("integrand is not finite on [" + std::to_string(lo) + ", " +
                         std::to_string(hi) + "]");
  }
  return {lo, hi, value, error};
}

bool accepted(double error, double value, const QuadratureSpec& spec) {
  return error <= std::max(spec.abs_tol, spec.rel_tol * std::abs(value));
}

QuadratureSpec inner_spec(const QuadratureSpec& spec, double weight) {
  QuadratureSpec inner = spec;
  inner.abs_tol = 0.1 * spec.abs_tol / std::max(1.0, weight);
  inner.rel_tol = 0.1 * spec.rel_tol;
  return inner;
}

constexpr int kMinPeriodicNodes = 32;
constexpr int kMaxPeriodicNodes = 1 << 20;

}  // namespace

void QuadratureSpec::validate() const {
  if (!(abs_tol > 0.0) || !(rel_tol > 0.0) || max_subdivisions < 1) {
    throw DomainError("quadrature tolerances must be positive and max_subdivisions >= 1");
  }
}

double lambert_w0(double x) {
  if (std::isnan(x)) throw DomainError("lambert_w0: NaN argument");
  if (x < -kInvE) {
    // Tolerate rounding of an argument that is mathematically -1/e.
    if (x >= -kInvE * (1.0 + 4.0 * std::numeric_limits<double>::epsilon())) return -1.0;
    throw DomainError("lambert_w0: argument below -1/e");
  }
  if (x == 0.0) return 0.0;
  if (std::isinf(x)) return x;

  double w = lambert_initial_guess(x);
  for (int iter = 0; iter < 64; ++iter) {
    const double ew = std::exp(w);
    const double residual = w * ew - x;
    const double wp1 = w + 1.0;
    if (wp1 == 0.0) break;
    const double step = residual / (ew * wp1 - (w + 2.0) * residual / (2.0 * wp1));
    w -= step;
    if (std::abs(step) <= 4.0 * std::numeric_limits<double>::epsilon() * (1.0 + std::abs(w))) {
      break;
    }
  }
  return std::max(w, -1.0);
}

double gamma_upper_regularized(double mu, double x) {
  if (!(mu > 0.0)) throw DomainError("gamma_upper_regularized: mu must be positive");
  if (!(x >= 0.0)) throw DomainError("gamma_upper_regularized: x must be nonnegative");
  if (x == 0.0) return 1.0;
  if (std::isinf(x)) return 0.0;

  const double log_prefactor = -x + mu * std::log(x) - std::lgamma(mu);
  constexpr double kEps = 1e-16;
  constexpr int kMaxIter = 10000;

  if (x < mu + 1.0) {
    // Lower series P(mu, x) = x^mu e^-x / Gamma(mu+1) * sum x^n / (mu+1)...(mu+n).
    double term = 1.0 / mu;
    double sum = term;
    double a = mu;
    for (int n = 0; n < kMaxIter; ++n) {
      a += 1.0;
      term *= x / a;
      sum += term;
      if (std::abs(term) < std::abs(sum) * kEps) break;
    }
    return std::clamp(1.0 - sum * std::exp(log_prefactor), 0.0, 1.0);
  }

  // Continued fraction for Q (modified Lentz).
  constexpr double kTiny = 1e-300;
  double b = x + 1.0 - mu;
  double c = 1.0 / kTiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < kMaxIter; ++i) {
    const double an = -i * (i - mu);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < kTiny) d = kTiny;
    c = b + an / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < kEps) break;
  }
  return std::clamp(std::exp(log_prefactor) * h, 0.0, 1.0);
}

double integrate_radial(const RadialFunction& f, double lo, double hi,
                        const QuadratureSpec& spec) {
  spec.validate();
  if (!(lo <= hi)) throw DomainError("integrate_radial: lo must not exceed hi");
  if (lo == hi) return 0.0;

  std::priority_queue<Segment> pending;
  Segment whole = gauss_kronrod(f, lo, hi);
  double total = whole.value;
  double total_error = whole.error;
  pending.push(whole);

  int splits = 0;
  while (!accepted(total_error, total, spec)) {
    if (splits >= spec.max_subdivisions) {
      throw NumericalError("integrate_radial: no convergence after " +
                           std::to_string(spec.max_subdivisions) + " subdivisions (error " +
                           std::to_string(total_error) + ")");
    }
    const Segment worst = pending.top();
    pending.pop();
    const double mid = 0.5 * (worst.lo + worst.hi);
    const Segment left = gauss_kronrod(f, worst.lo, mid);
    const Segment right = gauss_kronrod(f, mid, worst.hi);
    total += left.value + right.value - worst.value;
    total_error += left.error + right.error - worst.error;
    pending.push(left);
    pending.push(right);
    ++splits;
  }
  // Re-sum to shed accumulated rounding from the incremental updates.
  double resummed = 0.0;
  while (!pending.empty()) {
    resummed += pending.top().value;
    pending.pop();
  }
  return resummed;
}

double integrate_periodic(const RadialFunction& f, const QuadratureSpec& spec) {
  spec.validate();
  constexpr double kTwoPi = 2.0 * std::numbers::pi;
  int nodes = kMinPeriodicNodes / 2;
  double sum = 0.0;
  for (int k = 0; k < nodes; ++k) sum += f(kTwoPi * k / nodes);
  double estimate = kTwoPi * sum / nodes;
  while (true) {
    double odd = 0.0;
    for (int k = 0; k < nodes; ++k) odd += f(kTwoPi * (k + 0.5) / nodes);
    sum += odd;
    nodes *= 2;
    const double refined = kTwoPi * sum / nodes;
    if (!std::isfinite(refined)) throw NumericalError("integrate_periodic: non-finite integrand");
    if (accepted(std::abs(refined - estimate), refined, spec)) return refined;
    if (nodes >= kMaxPeriodicNodes) {
      throw NumericalError("integrate_periodic: no convergence at " + std::to_string(nodes) +
                           " nodes");
    }
    estimate = refined;
  }
}

double integrate_periodic_even(const RadialFunction& f, const QuadratureSpec& spec) {
  spec.validate();
  constexpr double kPi = std::numbers::pi;
  // Trapezoid on the full circle with nodes 2*pi*k/n, folded onto [0, pi].
  int half_nodes = kMinPeriodicNodes / 4;  // n / 2
  double interior = 0.0;
  for (int k = 1; k < half_nodes; ++k) interior += f(kPi * k / half_nodes);
  const double ends = f(0.0) + f(kPi);
  double estimate = kPi * (ends + 2.0 * interior) / half_nodes;
  while (true) {
    for (int k = 0; k < half_nodes; ++k) interior += f(kPi * (k + 0.5) / half_nodes);
    half_nodes *= 2;
    const double refined = kPi * (ends + 2.0 * interior) / half_nodes;
    if (!std::isfinite(refined)) {
      throw NumericalError("integrate_periodic_even: non-finite integrand");
    }
    if (accepted(std::abs(refined - estimate), refined, spec)) return refined;
    if (half_nodes >= kMaxPeriodicNodes / 2) {
      throw NumericalError("integrate_periodic_even: no convergence at " +
                           std::to_string(2 * half_nodes) + " nodes");
    }
    estimate = refined;
  }
}

double integrate_polar(const PolarFunction& f, double r_lo, double r_hi,
                       const QuadratureSpec& spec) {
  spec.validate();
  if (!(r_lo >= 0.0) || !(r_lo <= r_hi)) {
    throw DomainError("integrate_polar: need 0 <= r_lo <= r_hi");
  }
  const QuadratureSpec angular = inner_spec(spec, 0.5 * (r_hi * r_hi - r_lo * r_lo));
  return integrate_radial(
      [&](double rho) {
        return rho * integrate_periodic([&](double theta) { return f(rho, theta); }, angular);
      },
      r_lo, r_hi, spec);
}

}  // namespace hybridrelay::numerics
