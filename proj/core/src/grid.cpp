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

#include "coxmax/grid.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>

#include "coxmax/errors.hpp"

namespace coxmax {

bool GridSpec::same_as(const GridSpec& o) const {
  return x0 == o.x0 && y0 == o.y0 && dx == o.dx && dy == o.dy && nx == o.nx && ny == o.ny;
}

void GridSpec::validate(std::size_t max_points) const {
  if (nx == 0 || ny == 0) throw ParameterError("grid: nx and ny must be positive");
  if (!(dx > 0.0) || !(dy > 0.0)) throw ParameterError("grid: spacing must be positive");
  if (nx > max_points / ny) {
    throw SizeError("grid: " + std::to_string(nx) + "x" + std::to_string(ny) +
                    " exceeds the point budget " + std::to_string(max_points));
  }
}

GridSpec cell_grid(const Rect& region, double dx, double dy) {
  if (!(dx > 0.0) || !(dy > 0.0)) throw ParameterError("cell_grid: spacing must be positive");
  if (!region.valid()) throw ParameterError("cell_grid: invalid region");
  const auto count = [](double len, double d) {
    return std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(len / d)));
  };
  GridSpec spec;
  spec.nx = count(region.width(), dx);
  spec.ny = count(region.height(), dy);
  spec.dx = dx;
  spec.dy = dy;
  spec.x0 = region.xmin + 0.5 * dx;
  spec.y0 = region.ymin + 0.5 * dy;
  return spec;
}

double GridField::interpolate(double x, double y) const {
  const auto& s = spec;
  double fx = (x - s.x0) / s.dx;
  double fy = (y - s.y0) / s.dy;
  fx = std::clamp(fx, 0.0, static_cast<double>(s.nx - 1));
  fy = std::clamp(fy, 0.0, static_cast<double>(s.ny - 1));
  std::size_t ix = static_cast<std::size_t>(fx);
  std::size_t iy = static_cast<std::size_t>(fy);
  if (ix + 1 >= s.nx) ix = s.nx >= 2 ? s.nx - 2 : 0;
  if (iy + 1 >= s.ny) iy = s.ny >= 2 ? s.ny - 2 : 0;
  const double tx = s.nx >= 2 ? fx - static_cast<double>(ix) : 0.0;
  const double ty = s.ny >= 2 ? fy - static_cast<double>(iy) : 0.0;
  const std::size_t ix1 = s.nx >= 2 ? ix + 1 : ix;
  const std::size_t iy1 = s.ny >= 2 ? iy + 1 : iy;
  const double v00 = at(ix, iy), v10 = at(ix1, iy);
  const double v01 = at(ix, iy1), v11 = at(ix1, iy1);
  return (1.0 - ty) * ((1.0 - tx) * v00 + tx * v10) + ty * ((1.0 - tx) * v01 + tx * v11);
}

double GridField::min_value() const {
  return *std::min_element(values.begin(), values.end());
}

double GridField::max_value() const {
  return *std::max_element(values.begin(), values.end());
}

GridField constant_field(const GridSpec& spec, double value) {
  return GridField(spec, value);
}

double integrate_region(const GridField& field, const Rect& region, bool* empty) {
  const auto& s = field.spec;
  const double area = s.cell_area();
  double sum = 0.0;
  bool any = false;
  for (std::size_t iy = 0; iy < s.ny; ++iy) {
    const double y = s.node_y(iy);
    if (y < region.ymin || y > region.ymax) continue;
    for (std::size_t ix = 0; ix < s.nx; ++ix) {
      const double x = s.node_x(ix);
      if (x < region.xmin || x > region.xmax) continue;
      sum += field.at(ix, iy);
      any = true;
    }
  }
  if (empty) *empty = !any;
  return sum * area;
}

GridSpec subgrid_in(const GridSpec& spec, const Rect& region) {
  std::size_t ix_lo = spec.nx, ix_hi = 0, iy_lo = spec.ny, iy_hi = 0;
  for (std::size_t ix = 0; ix < spec.nx; ++ix) {
    const double x = spec.node_x(ix);
    if (x < region.xmin || x > region.xmax) continue;
    ix_lo = std::min(ix_lo, ix);
    ix_hi = std::max(ix_hi, ix);
  }
  for (std::size_t iy = 0; iy < spec.ny; ++iy) {
    const double y = spec.node_y(iy);
    if (y < region.ymin || y > region.ymax) continue;
    iy_lo = std::min(iy_lo, iy);
    iy_hi = std::max(iy_hi, iy);
  }
  if (ix_lo > ix_hi || iy_lo > iy_hi) {
    throw SizeError("subgrid_in: region holds no grid nodes");
  }
  GridSpec sub;
  sub.dx = spec.dx;
  sub.dy = spec.dy;
  sub.x0 = spec.node_x(ix_lo);
  sub.y0 = spec.node_y(iy_lo);
  sub.nx = ix_hi - ix_lo + 1;
  sub.ny = iy_hi - iy_lo + 1;
  return sub;
}

GridField extract_subgrid(const GridField& field, const GridSpec& nodes) {
  const auto& src = field.spec;
  const double fx = (nodes.x0 - src.x0) / src.dx;
  const double fy = (nodes.y0 - src.y0) / src.dy;
  const auto ox = static_cast<long long>(std::llround(fx));
  const auto oy = static_cast<long long>(std::llround(fy));
  const double tol = 1e-6;
  if (std::abs(fx - static_cast<double>(ox)) > tol ||
      std::abs(fy - static_cast<double>(oy)) > tol ||
      std::abs(nodes.dx - src.dx) > tol * src.dx ||
      std::abs(nodes.dy - src.dy) > tol * src.dy) {
    throw ParameterError("extract_subgrid: grids are not node-aligned");
  }
  if (ox < 0 || oy < 0 || static_cast<std::size_t>(ox) + nodes.nx > src.nx ||
      static_cast<std::size_t>(oy) + nodes.ny > src.ny) {
    throw SizeError("extract_subgrid: subgrid exceeds the field extent");
  }
  GridField out(nodes);
  for (std::size_t iy = 0; iy < nodes.ny; ++iy) {
    for (std::size_t ix = 0; ix < nodes.nx; ++ix) {
      out.at(ix, iy) =
          field.at(static_cast<std::size_t>(ox) + ix, static_cast<std::size_t>(oy) + iy);
    }
  }
  return out;
}

namespace {

void append_double(std::string& out, double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  out += buf;
}

}  // namespace

void write_gf1(std::ostream& os, const GridField& field) {
  const auto& s = field.spec;
  std::string line = "GF1 " + std::to_string(s.nx) + " " + std::to_string(s.ny) + " ";
  append_double(line, s.x0);
  line += " ";
  append_double(line, s.y0);
  line += " ";
  append_double(line, s.dx);
  line += " ";
  append_double(line, s.dy);
  line += "\n";
  os << line;
  std::string row;
  for (std::size_t iy = 0; iy < s.ny; ++iy) {
    row.clear();
    for (std::size_t ix = 0; ix < s.nx; ++ix) {
      if (ix) row += " ";
      append_double(row, field.at(ix, iy));
    }
    row += "\n";
    os << row;
  }
}

void write_gf1_file(const std::string& path, const GridField& field) {
  std::ofstream os(path);
  if (!os) throw IoError("cannot open for writing: " + path);
  write_gf1(os, field);
  if (!os) throw IoError("write failed: " + path);
}

GridField read_gf1(std::istream& is) {
  std::string magic;
  is >> magic;
  if (magic != "GF1") throw IoError("GF1: bad magic '" + magic + "'");
  GridSpec spec;
  is >> spec.nx >> spec.ny >> spec.x0 >> spec.y0 >> spec.dx >> spec.dy;
  if (!is) throw IoError("GF1: malformed header");
  spec.validate();
  GridField field(spec);
  for (auto& v : field.values) {
    if (!(is >> v)) throw IoError("GF1: truncated value section");
  }
  return field;
}

GridField read_gf1_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw IoError("cannot open: " + path);
  return read_gf1(is);
}

}  // namespace coxmax
