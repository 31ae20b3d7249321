// Copyright 2026 The coxmax Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <doctest.h>

#include <cmath>

#include "coxmax/errors.hpp"
#include "coxmax/rng.hpp"
#include "coxmax/storm_model.hpp"

using coxmax::ShapeComponent;
using coxmax::ShapeKind;
using coxmax::StormShape;

namespace {
constexpr double kInvTwoPi = 0.15915494309189534;
}

TEST_SUITE_BEGIN("storm_model");

TEST_CASE("gaussian density evaluation and truncation") {
  const StormShape shape = StormShape::gaussian(1e-4);
  CHECK(shape.evaluate(0, 0.0, 0.0) == doctest::Approx(kInvTwoPi).epsilon(1e-12));
  const double r = shape.trunc_radius();
  CHECK(r == doctest::Approx(3.8399123181569751).epsilon(1e-12));
  // Just outside the truncation radius the profile is exactly zero.
  CHECK(shape.evaluate(0, r + 1e-9, 0.0) == 0.0);
  CHECK(shape.evaluate(0, r - 1e-9, 0.0) > 0.0);
}

TEST_CASE("disk indicator evaluation") {
  const StormShape shape = StormShape::disk(1.0, 2.0);
  CHECK(shape.evaluate(0, 0.5, 0.0) == 2.0);
  CHECK(shape.evaluate(0, 1.5, 0.0) == 0.0);
  CHECK(shape.evaluate(0, 1.0, 0.0) == 2.0);  // closed support
}

TEST_CASE("truncation constants for the gaussian profile") {
  ShapeComponent c;
  c.kind = ShapeKind::GaussianDensity;
  SUBCASE("epsilon 1e-4") {
    const auto tc = coxmax::truncation_constants(c, 1e-4);
    CHECK(tc.bound == doctest::Approx(kInvTwoPi).epsilon(1e-14));
    CHECK(tc.radius == doctest::Approx(3.8399123181569751).epsilon(1e-12));
  }
  SUBCASE("epsilon at half the peak") {
    const auto tc = coxmax::truncation_constants(c, kInvTwoPi / 2.0);
    CHECK(tc.radius == doctest::Approx(std::sqrt(2.0 * std::log(2.0))).epsilon(1e-12));
  }
  SUBCASE("degenerate epsilon") {
    CHECK_THROWS_AS(coxmax::truncation_constants(c, 1.0), coxmax::ParameterError);
    CHECK_THROWS_AS(coxmax::truncation_constants(c, 1e-4, 0.5), coxmax::ParameterError);
  }
}

TEST_CASE("truncation constants for the disk") {
  ShapeComponent c;
  c.kind = ShapeKind::DiskIndicator;
  c.radius = 1.4;
  c.height = 2.0;
  const auto tc = coxmax::truncation_constants(c, 0.5);
  CHECK(tc.radius == 1.4);
  CHECK(tc.bound == 2.0);
  CHECK_THROWS_AS(coxmax::truncation_constants(c, 2.0), coxmax::ParameterError);
}

TEST_CASE("shape integrals") {
  SUBCASE("gaussian at R = 3.89") {
    // Radial mass inside B_R for the standard bivariate normal.
    ShapeComponent c;
    c.kind = ShapeKind::GaussianDensity;
    c.trunc_radius = 3.89;
    c.bound = kInvTwoPi;
    CHECK(c.integral() == doctest::Approx(0.99948226653786761).epsilon(1e-12));
  }
  SUBCASE("gaussian with huge R integrates to one") {
    ShapeComponent c;
    c.kind = ShapeKind::GaussianDensity;
    c.trunc_radius = 100.0;
    c.bound = kInvTwoPi;
    CHECK(c.integral() == doctest::Approx(1.0).epsilon(1e-14));
  }
  SUBCASE("unit disk") {
    const StormShape shape = StormShape::disk(1.0, 1.0);
    CHECK(shape.integral() == doctest::Approx(3.14159265358979).epsilon(1e-12));
  }
}

TEST_CASE("radial symmetry") {
  const StormShape gauss = StormShape::gaussian(1e-4);
  const StormShape disk = StormShape::disk(1.3, 0.7);
  coxmax::Rng rng(11);
  for (int i = 0; i < 1000; ++i) {
    const double angle = rng.uniform(0.0, 6.2831853);
    const double radius = rng.uniform(0.0, 5.0);
    const double x = radius * std::cos(angle);
    const double y = radius * std::sin(angle);
    CHECK(gauss.evaluate(0, x, y) ==
          doctest::Approx(gauss.evaluate(0, radius, 0.0)).epsilon(1e-12));
    CHECK(disk.evaluate(0, x, y) == disk.evaluate(0, radius, 0.0));
  }
}

TEST_CASE("integral matches midpoint quadrature") {
  const StormShape shape = StormShape::gaussian(1e-4);
  const double r = shape.trunc_radius();
  const int n = 1001;
  const double step = 2.0 * (r + 0.1) / n;
  double acc = 0.0;
  for (int iy = 0; iy < n; ++iy) {
    const double y = -(r + 0.1) + (iy + 0.5) * step;
    for (int ix = 0; ix < n; ++ix) {
      const double x = -(r + 0.1) + (ix + 0.5) * step;
      acc += shape.evaluate(0, x, y);
    }
  }
  acc *= step * step;
  CHECK(acc == doctest::Approx(shape.integral()).epsilon(1e-4));
}

TEST_CASE("truncation bound holds on random points") {
  const StormShape shape = StormShape::gaussian(2e-3, 1.7);
  const double r = shape.trunc_radius();
  const double c = shape.bound();
  coxmax::Rng rng(7);
  for (int i = 0; i < 100000; ++i) {
    const double x = rng.uniform(-2.0 * r, 2.0 * r);
    const double y = rng.uniform(-2.0 * r, 2.0 * r);
    const double v = shape.evaluate(0, x, y);
    if (x * x + y * y > r * r) {
      CHECK(v == 0.0);
    } else {
      CHECK(v <= c * (1.0 + 1e-12));
    }
  }
}

TEST_CASE("mixture weights, sampling and mean") {
  ShapeComponent gauss;
  gauss.kind = ShapeKind::GaussianDensity;
  gauss.weight = 3.0;
  const auto tc = coxmax::truncation_constants(gauss, 1e-4);
  gauss.trunc_radius = tc.radius;
  gauss.bound = tc.bound;
  ShapeComponent disk;
  disk.kind = ShapeKind::DiskIndicator;
  disk.weight = 1.0;
  disk.radius = 2.0;
  disk.height = 0.5;
  disk.trunc_radius = 2.0;
  disk.bound = 0.5;
  const StormShape mix = StormShape::mixture({gauss, disk});

  CHECK(mix.n_components() == 2);
  CHECK(mix.component(0).weight == doctest::Approx(0.75));
  CHECK(mix.trunc_radius() == doctest::Approx(tc.radius));
  CHECK(mix.bound() == doctest::Approx(tc.bound));
  CHECK(mix.integral() ==
        doctest::Approx(0.75 * gauss.integral() + 0.25 * disk.integral()).epsilon(1e-12));
  CHECK(mix.evaluate_mean(0.1, 0.0) ==
        doctest::Approx(0.75 * gauss.value(0.1) + 0.25 * disk.value(0.1)).epsilon(1e-12));

  coxmax::Rng rng(123);
  int first = 0;
  const int reps = 100000;
  for (int i = 0; i < reps; ++i) {
    if (mix.sample_component(rng) == 0) ++first;
  }
  CHECK(std::abs(first / static_cast<double>(reps) - 0.75) < 0.005);
}

TEST_CASE("scaling constants tie mu_y, mu_z and c_psi together") {
  const StormShape shape = StormShape::gaussian(1e-4);
  SUBCASE("unit mean policy") {
    const auto sc =
        coxmax::scaling_constants(shape, 1.0, coxmax::IntensityMeanPolicy::unit());
    CHECK(sc.c_psi == 1.0);
    CHECK(sc.mu_y == doctest::Approx(shape.integral()));
    CHECK(sc.mu_z == doctest::Approx(sc.mu_y / sc.c_psi));
  }
  SUBCASE("explicit mean") {
    const auto sc = coxmax::scaling_constants(
        shape, 2.0, coxmax::IntensityMeanPolicy::explicit_mean(0.0));
    CHECK(sc.c_psi == doctest::Approx(std::exp(1.0)));
    CHECK(sc.mu_y == doctest::Approx(std::exp(1.0) * shape.integral()));
    CHECK(sc.mu_z == doctest::Approx(shape.integral()));
  }
}

TEST_SUITE_END();
