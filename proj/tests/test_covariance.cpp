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

#include "coxmax/covariance.hpp"
#include "coxmax/errors.hpp"

using coxmax::CovarianceModel;
using coxmax::kInfSmoothness;

TEST_SUITE_BEGIN("covariance");

TEST_CASE("exponential special case nu = 1/2") {
  const auto model = CovarianceModel::matern(1.0, 1.0, 0.5);
  CHECK(model.evaluate(1.0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-12));
  // Closed form against the Bessel route over a wide lag sweep.
  const auto wiggle = CovarianceModel::matern(1.0, 1.0, 0.5000001);
  for (int i = 1; i <= 100; ++i) {
    const double h = 0.1 * i;
    CHECK(model.evaluate(h) == doctest::Approx(std::exp(-h)).epsilon(1e-10));
    CHECK(wiggle.evaluate(h) == doctest::Approx(std::exp(-h)).epsilon(1e-4));
  }
}

TEST_CASE("evaluate at zero is exactly the variance") {
  for (const auto& model :
       {CovarianceModel::matern(2.5, 1.7, 1.0), CovarianceModel::matern(0.3, 2.0, kInfSmoothness),
        CovarianceModel::powered_exponential(4.0, 0.5, 1.3)}) {
    CHECK(model.evaluate(0.0) == model.variance);
  }
}

TEST_CASE("gaussian limit nu = inf") {
  const auto model = CovarianceModel::matern(1.0, 1.0, kInfSmoothness);
  CHECK(model.evaluate(1.0) == doctest::Approx(std::exp(-0.5)).epsilon(1e-12));
  // Large finite order approaches the limit.
  const auto big = CovarianceModel::matern(1.0, 1.0, 1e6);
  CHECK(std::abs(big.evaluate(1.0) - std::exp(-0.5)) < 1e-3);
}

TEST_CASE("nu = 3/2 closed form") {
  const auto model = CovarianceModel::matern(1.0, 1.0, 1.5);
  for (int i = 0; i <= 100; ++i) {
    const double h = 0.1 * i;
    const double a = std::sqrt(3.0) * h;
    CHECK(model.evaluate(h) == doctest::Approx((1.0 + a) * std::exp(-a)).epsilon(1e-10));
  }
}

TEST_CASE("scale enters as h over beta") {
  const auto unit = CovarianceModel::matern(1.0, 1.0, 0.8);
  const auto scaled = CovarianceModel::matern(1.0, 2.5, 0.8);
  for (const double h : {0.3, 1.0, 4.0}) {
    CHECK(scaled.evaluate(h) == doctest::Approx(unit.evaluate(h / 2.5)).epsilon(1e-13));
  }
}

TEST_CASE("monotone non-increasing and bounded correlation") {
  const auto models = {CovarianceModel::matern(2.0, 1.3, 0.7),
                       CovarianceModel::matern(1.0, 0.6, 2.0),
                       CovarianceModel::matern(1.5, 2.0, kInfSmoothness),
                       CovarianceModel::powered_exponential(1.0, 1.0, 0.7),
                       CovarianceModel::powered_exponential(2.0, 1.5, 2.0)};
  for (const auto& model : models) {
    double prev = model.correlation(0.0);
    CHECK(prev == 1.0);
    for (int i = 1; i <= 1000; ++i) {
      const double h = 10.0 * model.scale * i / 1000.0;
      const double c = model.correlation(h);
      CHECK(c <= prev + 1e-12);
      CHECK(c >= 0.0);
      CHECK(c <= 1.0);
      prev = c;
    }
  }
}

TEST_CASE("sample continuity witnesses") {
  SUBCASE("matern nu=1") {
    const auto w = coxmax::check_sample_continuity(CovarianceModel::matern(1.0, 1.0, 1.0));
    CHECK(w.holds);
    CHECK(w.holder_exponent == doctest::Approx(1.0));
    CHECK(w.bound_constant > 0.0);
  }
  SUBCASE("powered exponential alpha=2") {
    const auto w = coxmax::check_sample_continuity(
        CovarianceModel::powered_exponential(1.0, 1.0, 2.0));
    CHECK(w.holds);
    CHECK(w.holder_exponent == doctest::Approx(2.0));
  }
  SUBCASE("matern nu=0.5 has exponent 1 and verified bound") {
    const auto model = CovarianceModel::matern(1.0, 1.0, 0.5);
    const auto w = coxmax::check_sample_continuity(model);
    CHECK(w.holds);
    CHECK(w.holder_exponent == doctest::Approx(1.0));
    // 1 - exp(-h) <= h: the witness constant should be close to 1.
    CHECK(w.bound_constant <= 1.0 + 1e-6);
    for (int i = 1; i <= 50; ++i) {
      const double h = i / 50.0;
      CHECK(1.0 - model.correlation(h) <=
            w.bound_constant * std::pow(h, w.holder_exponent) + 1e-12);
    }
  }
  SUBCASE("all supported families pass") {
    for (const double nu : {0.25, 0.5, 1.0, 1.5, 3.0, 10.0, kInfSmoothness}) {
      CHECK(coxmax::check_sample_continuity(CovarianceModel::matern(2.0, 1.5, nu)).holds);
    }
    for (const double a : {0.3, 1.0, 1.7, 2.0}) {
      CHECK(coxmax::check_sample_continuity(
                CovarianceModel::powered_exponential(1.0, 2.0, a))
                .holds);
    }
  }
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(CovarianceModel::matern(0.0, 1.0, 1.0), coxmax::ParameterError);
  CHECK_THROWS_AS(CovarianceModel::matern(1.0, -1.0, 1.0), coxmax::ParameterError);
  CHECK_THROWS_AS(CovarianceModel::matern(1.0, 1.0, 0.0), coxmax::ParameterError);
  CHECK_THROWS_AS(CovarianceModel::powered_exponential(1.0, 1.0, 2.5),
                  coxmax::ParameterError);
  CHECK_THROWS_AS(CovarianceModel::powered_exponential(1.0, 1.0, 0.0),
                  coxmax::ParameterError);
  const auto model = CovarianceModel::matern(1.0, 1.0, 1.0);
  CHECK_THROWS_AS(model.correlation(-0.1), coxmax::ParameterError);
}

TEST_CASE("config round trip") {
  const auto original = CovarianceModel::matern(2.0, 3.0, kInfSmoothness);
  const auto entries = coxmax::covariance_to_entries(original);
  const auto back = coxmax::covariance_from_entries(entries);
  CHECK(back.variance == original.variance);
  CHECK(back.scale == original.scale);
  CHECK(std::isinf(back.smoothness));

  const auto pexp = CovarianceModel::powered_exponential(1.5, 0.7, 1.2);
  const auto back2 = coxmax::covariance_from_entries(coxmax::covariance_to_entries(pexp));
  CHECK(back2.exponent == pexp.exponent);
  CHECK(back2.family == coxmax::CovFamily::PoweredExponential);
}

TEST_SUITE_END();
