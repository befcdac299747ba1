// Copyright 2026 The hybridrelay Authors
// SPDX-License-Identifier: Apache-2.0
#include <cmath>
#include <numbers>
#include <set>

#include "doctest.h"
#include "hybridrelay/errors.hpp"
#include "hybridrelay/pointprocess.hpp"

using namespace hybridrelay;
using namespace hybridrelay::pointprocess;
using std::numbers::pi;

TEST_CASE("sample_ppp with zero density is empty") {
  Rng rng(1);
  for (int i = 0; i < 100; ++i) CHECK(sample_ppp(0.0, 200.0, rng).empty());
}

TEST_CASE("sample_ppp count and radial law") {
  Rng rng(2);
  const double density = 4e-3;
  const double r_c = 200.0;
  double count = 0.0;
  double rho2 = 0.0;
  double cos_sum = 0.0;
  std::size_t points = 0;
  std::size_t outside = 0;
  const int realizations = 10000;
  for (int i = 0; i < realizations; ++i) {
    const auto pts = sample_ppp(density, r_c, rng);
    count += pts.size();
    for (const auto& p : pts) {
      outside += p.rho < 0.0 || p.rho > r_c || p.theta < 0.0 || p.theta >= 2.0 * pi;
      rho2 += p.rho * p.rho;
      cos_sum += std::cos(p.theta);
    }
    points += pts.size();
  }
  CHECK(outside == 0);
  const double mean = density * pi * r_c * r_c;
  CHECK(mean == doctest::Approx(502.65).epsilon(1e-4));
  CHECK(count / realizations == doctest::Approx(mean).epsilon(0.01));
  CHECK(rho2 / points == doctest::Approx(r_c * r_c / 2.0).epsilon(0.01));
  CHECK(std::abs(cos_sum / points) < 0.01);
}

TEST_CASE("distance_to_source") {
  CHECK(distance_to_source(50.0, 0.0, 50.0) == 0.0);
  CHECK(distance_to_source(12.0, pi, 30.0) == doctest::Approx(42.0).epsilon(1e-14));
  CHECK(distance_to_source(3.0, pi / 2.0, 4.0) == doctest::Approx(5.0).epsilon(1e-14));
  CHECK(distance_to_source(7.0, 1.3, 0.0) == doctest::Approx(7.0).epsilon(1e-14));
}

TEST_CASE("substreams are deterministic and distinct") {
  CHECK(substream_seed(1, 0) == substream_seed(1, 0));
  std::set<std::uint64_t> seeds;
  for (std::uint64_t k = 0; k < 1000; ++k) seeds.insert(substream_seed(42, k));
  CHECK(seeds.size() == 1000);
  CHECK(substream_seed(1, 5) != substream_seed(2, 5));
  auto a = make_substream(9, 3);
  auto b = make_substream(9, 3);
  for (int i = 0; i < 10; ++i) CHECK(a() == b());
}

TEST_CASE("NetworkGeometry validation") {
  NetworkGeometry g;
  g.density_rf = -1.0;
  CHECK_THROWS_AS(g.validate(), DomainError);
  g = {};
  g.r_c_m = 0.0;
  CHECK_THROWS_AS(g.validate(), DomainError);
}
