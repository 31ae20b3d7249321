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

#ifndef COXMAX_POINT_PATTERN_HPP
#define COXMAX_POINT_PATTERN_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "coxmax/geometry.hpp"

namespace coxmax {

// Finite planar point set with its observation window.
struct PointPattern {
  std::vector<Point> points;
  Rect window;

  std::size_t size() const { return points.size(); }

  // Points inside `region`, window replaced by it.
  PointPattern restricted_to(const Rect& region) const;
};

// PP1 text format. Line 1: "PP1 n xmin xmax ymin ymax", then n lines "x y".
void write_pp1(std::ostream& os, const PointPattern& pattern);
void write_pp1_file(const std::string& path, const PointPattern& pattern);
PointPattern read_pp1(std::istream& is);
PointPattern read_pp1_file(const std::string& path);

}  // namespace coxmax

#endif  // COXMAX_POINT_PATTERN_HPP
