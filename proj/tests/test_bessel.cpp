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
#include <gsl/gsl_sf_bessel.h>

#include <cmath>

#include "coxmax/bessel.hpp"
#include "coxmax/errors.hpp"

using coxmax::bessel_k;
using coxmax::bessel_k_scaled;
using coxmax::log_bessel_k;

namespace {

// High-precision reference points (arbitrary-precision evaluation, frozen).
struct Ref {
  double nu, x, k;
};
constexpr Ref kReference[] = {
    {0.1, 1e-6, 19.043892581433072},
    {0.1, 0.5, 0.93008652913147854},
    {0.1, 30.0, 2.1328272173424445e-14},
    {0.3, 2.0, 0.11603697434811926},
    {0.5, 1.0, 0.46106850444789456},
    {1.0, 1e-4, 9999.9995086864045},
    {1.0, 1.0, 0.60190723019723457},
    {1.5, 3.0, 0.04803464684235279},
    {2.0, 0.001, 1999999.5000009716},
    {3.7, 0.02, 52379078.150698273},
    {5.5, 12.0, 7.2726851637944448e-6},
    {12.3, 4.0, 5836.8093791172962},
    {20.0, 50.0, 1.7061483797220351e-21},
    {0.9999, 2.0, 0.1398601875135065},
    {7.0, 0.3, 209911239.47125662},
};

}  // namespace

TEST_SUITE_BEGIN("bessel");

TEST_CASE("matches frozen high-precision references") {
  for (const auto& ref : kReference) {
    const double got = bessel_k(ref.nu, ref.x);
    CHECK(got == doctest::Approx(ref.k).epsilon(1e-12));
  }
}

TEST_CASE("documented accuracy window against an independent implementation") {
  // nu in [0.1, 20] x arg in [1e-6, 50], the documented 1e-9 window.
  for (int i = 0; i <= 24; ++i) {
    const double nu = 0.1 * std::pow(200.0, i / 24.0);
    for (int j = 0; j <= 30; ++j) {
      const double x = 1e-6 * std::pow(5e7, j / 30.0);
      const double mine = bessel_k(nu, x);
      gsl_sf_result ref;
      if (gsl_sf_bessel_Knu_e(nu, x, &ref) != 0) continue;  // GSL under/overflow
      if (!(ref.val > 0.0) || !std::isfinite(mine)) continue;
      CHECK(std::abs(mine / ref.val - 1.0) < 1e-9);
    }
  }
}

TEST_CASE("half-integer closed forms") {
  const double x = 2.31;
  const double k_half = std::sqrt(M_PI / (2.0 * x)) * std::exp(-x);
  CHECK(bessel_k(0.5, x) == doctest::Approx(k_half).epsilon(1e-14));
  CHECK(bessel_k(1.5, x) == doctest::Approx(k_half * (1.0 + 1.0 / x)).epsilon(1e-14));
  CHECK(bessel_k(2.5, x) ==
        doctest::Approx(k_half * (1.0 + 3.0 / x + 3.0 / (x * x))).epsilon(1e-14));
}

TEST_CASE("scaled and log variants agree") {
  for (const double nu : {0.2, 1.0, 4.5}) {
    for (const double x : {0.5, 3.0, 40.0}) {
      const double k = bessel_k(nu, x);
      CHECK(bessel_k_scaled(nu, x) == doctest::Approx(k * std::exp(x)).epsilon(1e-11));
      CHECK(log_bessel_k(nu, x) == doctest::Approx(std::log(k)).epsilon(1e-11));
    }
  }
}

TEST_CASE("log form survives where the plain value overflows") {
  // K_60(0.01) overflows double; the log stays usable.
  const double lk = log_bessel_k(60.0, 0.01);
  CHECK(std::isfinite(lk));
  gsl_sf_result lnref;
  REQUIRE(gsl_sf_bessel_lnKnu_e(60.0, 0.01, &lnref) == 0);
  CHECK(lk == doctest::Approx(lnref.val).epsilon(1e-10));
  // Uniform-expansion branch for very large order.
  const double lk_big = log_bessel_k(1000.0, 800.0);
  REQUIRE(gsl_sf_bessel_lnKnu_e(1000.0, 800.0, &lnref) == 0);
  CHECK(lk_big == doctest::Approx(lnref.val).epsilon(1e-9));
}

TEST_CASE("argument validation") {
  CHECK_THROWS_AS(bessel_k(-1.0, 1.0), coxmax::ParameterError);
  CHECK_THROWS_AS(bessel_k(1.0, 0.0), coxmax::ParameterError);
  CHECK_THROWS_AS(bessel_k(1.0, -2.0), coxmax::ParameterError);
}

TEST_SUITE_END();
