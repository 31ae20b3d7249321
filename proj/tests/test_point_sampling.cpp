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
#include <sstream>
#include <vector>

#include "support/stats.hpp"
#include "coxmax/errors.hpp"
#include "coxmax/grid.hpp"
#include "coxmax/point_sampling.hpp"

using coxmax::cell_grid;
using coxmax::constant_field;
using coxmax::GridField;
using coxmax::PointPattern;
using coxmax::Rect;
using coxmax::Rng;

TEST_SUITE_BEGIN("point_sampling");

namespace {
const Rect kUnit{0.0, 1.0, 0.0, 1.0};
GridField unit_intensity(double level, double dx = 0.05) {
  return constant_field(cell_grid(kUnit, dx, dx), level);
}
}  // namespace

TEST_CASE("zero intensity gives the empty pattern") {
  Rng rng(1);
  const auto pattern = coxmax::sample_poisson(unit_intensity(0.0), kUnit, rng);
  CHECK(pattern.points.empty());
}

TEST_CASE("negative intensity is rejected") {
  GridField field = unit_intensity(1.0);
  field.values[3] = -0.5;
  Rng rng(1);
  CHECK_THROWS_AS(coxmax::sample_poisson(field, kUnit, rng), coxmax::ParameterError);
}

TEST_CASE("poisson counts have the right mean and dispersion") {
  const GridField field = unit_intensity(5.0);
  Rng rng(777);
  const int reps = 10000;
  std::vector<double> counts(reps);
  for (auto& c : counts) {
    c = static_cast<double>(coxmax::sample_poisson(field, kUnit, rng).points.size());
  }
  const double m = teststats::mean(counts);
  CHECK(std::abs(m - 5.0) < 3.0 * std::sqrt(5.0 / reps));
  CHECK(teststats::variance(counts) / m == doctest::Approx(1.0).epsilon(0.05));
}

TEST_CASE("disjoint halves are independent") {
  const GridField field = unit_intensity(5.0);
  const Rect left{0.0, 0.5, 0.0, 1.0};
  const Rect right{0.5001, 1.0, 0.0, 1.0};
  Rng rng(4242);
  const int reps = 10000;
  std::vector<double> nl(reps), nr(reps);
  for (int i = 0; i < reps; ++i) {
    const auto pattern = coxmax::sample_poisson(field, kUnit, rng);
    double l = 0.0, r = 0.0;
    for (const auto& p : pattern.points) {
      if (left.contains(p)) ++l;
      if (right.contains(p)) ++r;
    }
    nl[i] = l;
    nr[i] = r;
  }
  CHECK(std::abs(teststats::correlation(nl, nr)) < 0.03);
}

TEST_CASE("points land inside the window and follow the cell density") {
  // Step intensity: left half weight 1, right half weight 3.
  GridField field = unit_intensity(1.0, 0.025);
  for (std::size_t iy = 0; iy < field.spec.ny; ++iy) {
    for (std::size_t ix = 0; ix < field.spec.nx; ++ix) {
      if (field.spec.node_x(ix) > 0.5) field.at(ix, iy) = 3.0;
    }
  }
  Rng rng(31);
  double right = 0.0, total = 0.0;
  for (int i = 0; i < 400; ++i) {
    const auto pattern = coxmax::sample_poisson(field, kUnit, rng);
    for (const auto& p : pattern.points) {
      CHECK(kUnit.contains(p));
      total += 1.0;
      if (p.x > 0.5) right += 1.0;
    }
  }
  CHECK(right / total == doctest::Approx(0.75).epsilon(0.03));
}

TEST_CASE("thinning with constant probabilities") {
  PointPattern pattern;
  pattern.window = kUnit;
  Rng place(5);
  for (int i = 0; i < 10000; ++i) {
    pattern.points.push_back({place.uniform(), place.uniform()});
  }
  SUBCASE("p = 1 keeps everything") {
    Rng rng(9);
    const auto kept = coxmax::thin(pattern, unit_intensity(1.0), rng);
    CHECK(kept.points.size() == pattern.points.size());
  }
  SUBCASE("p = 0 deletes everything") {
    Rng rng(9);
    const auto kept = coxmax::thin(pattern, unit_intensity(0.0), rng);
    CHECK(kept.points.empty());
  }
  SUBCASE("p = 1/2 binomial count") {
    Rng rng(9);
    const auto kept = coxmax::thin(pattern, unit_intensity(0.5), rng);
    CHECK(std::abs(static_cast<double>(kept.points.size()) - 5000.0) < 3.0 * 50.0);
  }
  SUBCASE("out of range probabilities throw") {
    Rng rng(9);
    CHECK_THROWS_AS(coxmax::thin(pattern, unit_intensity(1.5), rng),
                    coxmax::ParameterError);
  }
}

TEST_CASE("sequential thinning composes multiplicatively") {
  PointPattern pattern;
  pattern.window = kUnit;
  Rng place(10);
  for (int i = 0; i < 2000; ++i) pattern.points.push_back({place.uniform(), place.uniform()});
  const int reps = 2000;
  std::vector<double> twice(reps), once(reps);
  Rng rng_a(21), rng_b(22);
  const auto p06 = unit_intensity(0.6);
  const auto p05 = unit_intensity(0.5);
  const auto p03 = unit_intensity(0.3);
  for (int i = 0; i < reps; ++i) {
    twice[i] = static_cast<double>(
        coxmax::thin(coxmax::thin(pattern, p06, rng_a), p05, rng_a).points.size());
    once[i] = static_cast<double>(coxmax::thin(pattern, p03, rng_b).points.size());
  }
  const auto ks = teststats::ks_test_two(twice, once);
  CHECK(ks.p_value > 0.001);
}

TEST_CASE("repair_to_base identities") {
  SUBCASE("f = 1 returns the restriction, no additions") {
    PointPattern pattern;
    pattern.window = kUnit;
    Rng place(3);
    for (int i = 0; i < 500; ++i) pattern.points.push_back({place.uniform(), place.uniform()});
    const Rect inner{0.2, 0.8, 0.2, 0.8};
    Rng rng(8);
    const auto repaired = coxmax::repair_to_base(pattern, unit_intensity(1.0),
                                                 unit_intensity(2.0), inner, rng);
    std::size_t expected = 0;
    for (const auto& p : pattern.points) {
      if (inner.contains(p)) ++expected;
    }
    CHECK(repaired.points.size() == expected);
    for (const auto& p : repaired.points) CHECK(inner.contains(p));
  }
  SUBCASE("f = 2 halves the count on average") {
    Rng rng(15);
    const auto f2 = unit_intensity(2.0);
    const auto psi = unit_intensity(1.0);
    double total = 0.0;
    const int reps = 3000;
    PointPattern pattern;
    pattern.window = kUnit;
    Rng place(4);
    for (int i = 0; i < 1000; ++i) pattern.points.push_back({place.uniform(), place.uniform()});
    for (int i = 0; i < reps; ++i) {
      total += static_cast<double>(
          coxmax::repair_to_base(pattern, f2, psi, kUnit, rng).points.size());
    }
    // Thinning with p = 1/2, psi deficit (1-2)_+ = 0: mean 500.
    CHECK(std::abs(total / reps - 500.0) < 3.0 * std::sqrt(250.0 / reps) + 2.0);
  }
  SUBCASE("f = 0 at a pattern point throws") {
    PointPattern pattern;
    pattern.window = kUnit;
    pattern.points.push_back({0.5, 0.5});
    Rng rng(2);
    CHECK_THROWS_AS(coxmax::repair_to_base(pattern, unit_intensity(0.0),
                                           unit_intensity(1.0), kUnit, rng),
                    coxmax::ParameterError);
  }
}

TEST_CASE("repair_to_base restores the base process law") {
  // pattern_f ~ PP(f lambda) with f = 1/2, psi = lambda: repaired intensity is
  // back to lambda. Monte Carlo check of the mean count.
  const double lambda = 6.0;
  const auto f_half = unit_intensity(0.5);
  const auto psi = unit_intensity(lambda);
  GridField f_lambda = unit_intensity(0.5 * lambda);
  Rng rng(2026);
  const int reps = 10000;
  double total = 0.0;
  for (int i = 0; i < reps; ++i) {
    const auto pattern_f = coxmax::sample_poisson(f_lambda, kUnit, rng);
    const auto repaired = coxmax::repair_to_base(pattern_f, f_half, psi, kUnit, rng);
    total += static_cast<double>(repaired.points.size());
  }
  const double mean = total / reps;
  CHECK(std::abs(mean - lambda) < 3.0 * std::sqrt(lambda / reps));
}

TEST_CASE("PP1 round trip") {
  PointPattern pattern;
  pattern.window = {-1.0, 2.0, 0.5, 3.5};
  pattern.points = {{0.1, 1.2}, {1.9, 3.4999}, {-0.5, 0.5}};
  std::stringstream buffer;
  coxmax::write_pp1(buffer, pattern);
  const auto back = coxmax::read_pp1(buffer);
  REQUIRE(back.points.size() == pattern.points.size());
  for (std::size_t i = 0; i < pattern.points.size(); ++i) {
    CHECK(back.points[i].x == pattern.points[i].x);
    CHECK(back.points[i].y == pattern.points[i].y);
  }
  CHECK(back.window.xmin == pattern.window.xmin);
}

TEST_SUITE_END();
