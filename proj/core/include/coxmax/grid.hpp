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

#ifndef COXMAX_GRID_HPP
#define COXMAX_GRID_HPP

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "coxmax/geometry.hpp"

namespace coxmax {

// Hard budget on grid sizes accepted by the simulators.
inline constexpr std::size_t kMaxGridPoints = std::size_t{1} << 22;

// Regular rectangular grid. Node (ix, iy) sits at
// (x0 + ix*dx, y0 + iy*dy); fields are stored row-major, index iy*nx + ix.
// For sampling purposes a node is the centre of the cell
// [x - dx/2, x + dx/2] x [y - dy/2, y + dy/2].
struct GridSpec {
  double x0 = 0.0;
  double y0 = 0.0;
  double dx = 1.0;
  double dy = 1.0;
  std::size_t nx = 1;
  std::size_t ny = 1;

  std::size_t size() const { return nx * ny; }
  double node_x(std::size_t ix) const { return x0 + static_cast<double>(ix) * dx; }
  double node_y(std::size_t iy) const { return y0 + static_cast<double>(iy) * dy; }
  std::size_t index(std::size_t ix, std::size_t iy) const { return iy * nx + ix; }
  double cell_area() const { return dx * dy; }

  // Extent spanned by the nodes themselves.
  Rect node_extent() const {
    return {x0, node_x(nx - 1), y0, node_y(ny - 1)};
  }
  // Extent spanned by the cells around the nodes.
  Rect cell_extent() const {
    return {x0 - 0.5 * dx, node_x(nx - 1) + 0.5 * dx,
            y0 - 0.5 * dy, node_y(ny - 1) + 0.5 * dy};
  }

  bool same_as(const GridSpec& o) const;
  void validate(std::size_t max_points = kMaxGridPoints) const;
};

// Grid whose nodes are the centres of a dx-by-dy tiling of `region`.
GridSpec cell_grid(const Rect& region, double dx, double dy);

// Scalar field on a regular grid.
struct GridField {
  GridSpec spec;
  std::vector<double> values;

  GridField() = default;
  explicit GridField(const GridSpec& s, double fill = 0.0)
      : spec(s), values(s.size(), fill) {}

  double& at(std::size_t ix, std::size_t iy) { return values[spec.index(ix, iy)]; }
  double at(std::size_t ix, std::size_t iy) const { return values[spec.index(ix, iy)]; }

  // Bilinear interpolation, clamped to the node extent.
  double interpolate(double x, double y) const;

  double min_value() const;
  double max_value() const;
};

// Constant field on the given grid.
GridField constant_field(const GridSpec& spec, double value);

// Midpoint-rule integral: sum of value*dx*dy over cells whose centres lie in
// `region`. Sets *empty to true (and returns 0) when no centre is inside.
double integrate_region(const GridField& field, const Rect& region, bool* empty = nullptr);

// Largest subgrid of `spec` whose nodes lie inside `region` (same spacing).
GridSpec subgrid_in(const GridSpec& spec, const Rect& region);

// Values of `field` at the nodes of `nodes`, which must align with the
// field's grid (same spacing, offset a whole number of steps).
GridField extract_subgrid(const GridField& field, const GridSpec& nodes);

// GF1 text format. Line 1: "GF1 nx ny x0 y0 dx dy", then nx*ny values,
// row-major. Values are written round-trip exact.
void write_gf1(std::ostream& os, const GridField& field);
void write_gf1_file(const std::string& path, const GridField& field);
GridField read_gf1(std::istream& is);
GridField read_gf1_file(const std::string& path);

}  // namespace coxmax

#endif  // COXMAX_GRID_HPP
