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

#include "coxmax/point_pattern.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>

#include "coxmax/errors.hpp"

namespace coxmax {

PointPattern PointPattern::restricted_to(const Rect& region) const {
  PointPattern out;
  out.window = region;
  for (const auto& p : points) {
    if (region.contains(p)) out.points.push_back(p);
  }
  return out;
}

void write_pp1(std::ostream& os, const PointPattern& pattern) {
  char buf[128];
  std::snprintf(buf, sizeof buf, "PP1 %zu %.17g %.17g %.17g %.17g\n", pattern.points.size(),
                pattern.window.xmin, pattern.window.xmax, pattern.window.ymin,
                pattern.window.ymax);
  os << buf;
  for (const auto& p : pattern.points) {
    std::snprintf(buf, sizeof buf, "%.17g %.17g\n", p.x, p.y);
    os << buf;
  }
}

void write_pp1_file(const std::string& path, const PointPattern& pattern) {
  std::ofstream os(path);
  if (!os) throw IoError("cannot open for writing: " + path);
  write_pp1(os, pattern);
  if (!os) throw IoError("write failed: " + path);
}

PointPattern read_pp1(std::istream& is) {
  std::string magic;
  is >> magic;
  if (magic != "PP1") throw IoError("PP1: bad magic '" + magic + "'");
  std::size_t n = 0;
  PointPattern pattern;
  is >> n >> pattern.window.xmin >> pattern.window.xmax >> pattern.window.ymin >>
      pattern.window.ymax;
  if (!is) throw IoError("PP1: malformed header");
  pattern.points.resize(n);
  for (auto& p : pattern.points) {
    if (!(is >> p.x >> p.y)) throw IoError("PP1: truncated point list");
  }
  return pattern;
}

PointPattern read_pp1_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw IoError("cannot open: " + path);
  return read_pp1(is);
}

}  // namespace coxmax
