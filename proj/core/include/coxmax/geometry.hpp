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

#ifndef COXMAX_GEOMETRY_HPP
#define COXMAX_GEOMETRY_HPP

#include <algorithm>
#include <cmath>

namespace coxmax {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

// Closed axis-aligned rectangle.
struct Rect {
  double xmin = 0.0;
  double xmax = 0.0;
  double ymin = 0.0;
  double ymax = 0.0;

  double width() const { return xmax - xmin; }
  double height() const { return ymax - ymin; }
  double area() const { return width() * height(); }
  bool valid() const { return xmax >= xmin && ymax >= ymin; }

  bool contains(double x, double y) const {
    return x >= xmin && x <= xmax && y >= ymin && y <= ymax;
  }
  bool contains(const Point& p) const { return contains(p.x, p.y); }

  // Distance from (x, y) to the rectangle, 0 inside.
  double distance(double x, double y) const {
    const double dx = std::max({xmin - x, 0.0, x - xmax});
    const double dy = std::max({ymin - y, 0.0, y - ymax});
    return std::hypot(dx, dy);
  }

  // Bounding rectangle of the Minkowski sum with a closed ball of radius r.
  // Membership in the exact (rounded-corner) sum is `distance(x,y) <= r`.
  Rect inflate(double r) const { return {xmin - r, xmax + r, ymin - r, ymax + r}; }

  // Erosion by a closed ball of radius r; exact for rectangles.
  Rect deflate(double r) const { return {xmin + r, xmax - r, ymin + r, ymax - r}; }

  bool intersects(const Rect& o) const {
    return xmin <= o.xmax && o.xmin <= xmax && ymin <= o.ymax && o.ymin <= ymax;
  }

  Rect intersection(const Rect& o) const {
    return {std::max(xmin, o.xmin), std::min(xmax, o.xmax),
            std::max(ymin, o.ymin), std::min(ymax, o.ymax)};
  }
};

inline double squared_norm(double x, double y) { return x * x + y * y; }

}  // namespace coxmax

#endif  // COXMAX_GEOMETRY_HPP
