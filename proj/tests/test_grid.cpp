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

#include "coxmax/errors.hpp"
#include "coxmax/grid.hpp"

using coxmax::cell_grid;
using coxmax::GridField;
using coxmax::GridSpec;
using coxmax::integrate_region;
using coxmax::Rect;

TEST_SUITE_BEGIN("grid");

TEST_CASE("cell grid tiles the region") {
  const Rect region{0.0, 1.0, 0.0, 2.0};
  const GridSpec spec = cell_grid(region, 0.01, 0.01);
  CHECK(spec.nx == 100);
  CHECK(spec.ny == 200);
  CHECK(spec.x0 == doctest::Approx(0.005));
  CHECK(spec.cell_extent().xmin == doctest::Approx(0.0));
  CHECK(spec.cell_extent().xmax == doctest::Approx(1.0));
}

TEST_CASE("midpoint integration of constants") {
  const Rect region{0.0, 1.0, 0.0, 1.0};
  SUBCASE("unit integrand") {
    const GridField field = coxmax::constant_field(cell_grid(region, 0.01, 0.01), 1.0);
    CHECK(integrate_region(field, region) == doctest::Approx(1.0).epsilon(0.02));
  }
  SUBCASE("linearity") {
    const GridField field = coxmax::constant_field(cell_grid(region, 0.01, 0.01), 2.0);
    CHECK(integrate_region(field, region) == doctest::Approx(2.0).epsilon(0.02));
  }
}

TEST_CASE("midpoint integration of exp(x) on the unit square") {
  const Rect region{0.0, 1.0, 0.0, 1.0};
  GridField field(cell_grid(region, 0.005, 0.005));
  const auto& s = field.spec;
  for (std::size_t iy = 0; iy < s.ny; ++iy) {
    for (std::size_t ix = 0; ix < s.nx; ++ix) {
      field.at(ix, iy) = std::exp(s.node_x(ix));
    }
  }
  CHECK(integrate_region(field, region) ==
        doctest::Approx(std::exp(1.0) - 1.0).epsilon(1e-3 / 1.71));
}

TEST_CASE("empty intersection flags and returns zero") {
  const GridField field = coxmax::constant_field(cell_grid({0, 1, 0, 1}, 0.1, 0.1), 3.0);
  bool empty = false;
  const double value = integrate_region(field, {5.0, 6.0, 5.0, 6.0}, &empty);
  CHECK(value == 0.0);
  CHECK(empty);
}

TEST_CASE("GF1 round trip is value exact") {
  GridSpec spec;
  spec.x0 = -1.25;
  spec.y0 = 0.5;
  spec.dx = 0.1;
  spec.dy = 0.2;
  spec.nx = 7;
  spec.ny = 3;
  GridField field(spec);
  for (std::size_t i = 0; i < field.values.size(); ++i) {
    field.values[i] = std::sin(static_cast<double>(i)) * 1e-7 + i;
  }
  std::stringstream buffer;
  coxmax::write_gf1(buffer, field);
  const GridField back = coxmax::read_gf1(buffer);
  CHECK(back.spec.same_as(spec));
  for (std::size_t i = 0; i < field.values.size(); ++i) {
    CHECK(back.values[i] == field.values[i]);
  }
}

TEST_CASE("GF1 rejects malformed input") {
  std::stringstream bad1("XX1 2 2 0 0 1 1\n1 2 3 4\n");
  CHECK_THROWS_AS(coxmax::read_gf1(bad1), coxmax::IoError);
  std::stringstream bad2("GF1 2 2 0 0 1 1\n1 2 3\n");
  CHECK_THROWS_AS(coxmax::read_gf1(bad2), coxmax::IoError);
}

TEST_CASE("bilinear interpolation reproduces bilinear functions") {
  GridSpec spec;
  spec.x0 = 0.0;
  spec.y0 = 0.0;
  spec.dx = 0.5;
  spec.dy = 0.25;
  spec.nx = 9;
  spec.ny = 17;
  GridField field(spec);
  const auto f = [](double x, double y) { return 2.0 + 3.0 * x - y + 0.5 * x * y; };
  for (std::size_t iy = 0; iy < spec.ny; ++iy) {
    for (std::size_t ix = 0; ix < spec.nx; ++ix) {
      field.at(ix, iy) = f(spec.node_x(ix), spec.node_y(iy));
    }
  }
  CHECK(field.interpolate(1.23, 2.11) == doctest::Approx(f(1.23, 2.11)).epsilon(1e-12));
  CHECK(field.interpolate(0.0, 0.0) == doctest::Approx(f(0.0, 0.0)));
  // Clamped outside the node hull.
  CHECK(field.interpolate(-5.0, -5.0) == doctest::Approx(f(0.0, 0.0)));
}

TEST_CASE("subgrid extraction is exact on aligned grids") {
  GridSpec spec;
  spec.x0 = 0.0;
  spec.y0 = 0.0;
  spec.dx = 0.5;
  spec.dy = 0.5;
  spec.nx = 11;
  spec.ny = 11;
  GridField field(spec);
  for (std::size_t i = 0; i < field.values.size(); ++i) field.values[i] = i * 1.0;
  const GridSpec sub = coxmax::subgrid_in(spec, {1.0, 3.0, 1.5, 2.5});
  const GridField cut = coxmax::extract_subgrid(field, sub);
  CHECK(sub.nx == 5);
  CHECK(sub.ny == 3);
  for (std::size_t iy = 0; iy < sub.ny; ++iy) {
    for (std::size_t ix = 0; ix < sub.nx; ++ix) {
      CHECK(cut.at(ix, iy) == field.at(ix + 2, iy + 3));
    }
  }
}

TEST_CASE("grid size budget enforced") {
  GridSpec spec;
  spec.nx = 1 << 12;
  spec.ny = 1 << 12;
  CHECK_THROWS_AS(spec.validate(1 << 22), coxmax::SizeError);
}

TEST_SUITE_END();
