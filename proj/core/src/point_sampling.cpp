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

#include "coxmax/point_sampling.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "coxmax/errors.hpp"

namespace coxmax {

namespace {

struct CellTable {
  std::vector<double> cumulative;  // cumulative cell masses
  std::vector<std::size_t> cell;   // flat index of each contributing cell
  double total = 0.0;
};

CellTable build_cell_table(const GridField& intensity, const Rect& window) {
  const auto& s = intensity.spec;
  CellTable t;
  const double area = s.cell_area();
  double acc = 0.0;
  for (std::size_t iy = 0; iy < s.ny; ++iy) {
    const double y = s.node_y(iy);
    if (y < window.ymin || y > window.ymax) continue;
    for (std::size_t ix = 0; ix < s.nx; ++ix) {
      const double x = s.node_x(ix);
      if (x < window.xmin || x > window.xmax) continue;
      const double v = intensity.at(ix, iy);
      if (v < 0.0) throw ParameterError("sample_poisson: negative intensity value");
      if (v == 0.0) continue;
      acc += v * area;
      t.cumulative.push_back(acc);
      t.cell.push_back(s.index(ix, iy));
    }
  }
  t.total = acc;
  return t;
}

}  // namespace

PointPattern sample_poisson(const GridField& intensity, const Rect& window, Rng& rng) {
  const auto& s = intensity.spec;
  const CellTable table = build_cell_table(intensity, window);
  PointPattern pattern;
  pattern.window = window;
  if (table.total <= 0.0) return pattern;
  const long long n = rng.poisson(table.total);
  pattern.points.reserve(static_cast<std::size_t>(n));
  for (long long k = 0; k < n; ++k) {
    const double u = rng.uniform() * table.total;
    const auto it = std::lower_bound(table.cumulative.begin(), table.cumulative.end(), u);
    const std::size_t pos = static_cast<std::size_t>(it - table.cumulative.begin());
    const std::size_t flat = table.cell[std::min(pos, table.cell.size() - 1)];
    const std::size_t ix = flat % s.nx;
    const std::size_t iy = flat / s.nx;
    // Uniform in the part of the cell inside the window, so points never
    // leave the window even for straddling boundary cells.
    const double xlo = std::max(s.node_x(ix) - 0.5 * s.dx, window.xmin);
    const double xhi = std::min(s.node_x(ix) + 0.5 * s.dx, window.xmax);
    const double ylo = std::max(s.node_y(iy) - 0.5 * s.dy, window.ymin);
    const double yhi = std::min(s.node_y(iy) + 0.5 * s.dy, window.ymax);
    pattern.points.push_back({rng.uniform(xlo, xhi), rng.uniform(ylo, yhi)});
  }
  return pattern;
}

PointPattern sample_poisson(const GridField& intensity, const Rect& window,
                            std::uint64_t seed) {
  Rng rng(seed);
  return sample_poisson(intensity, window, rng);
}

PointPattern thin(const PointPattern& pattern, const GridField& keep_probability, Rng& rng) {
  if (keep_probability.min_value() < -1e-9 || keep_probability.max_value() > 1.0 + 1e-9) {
    throw ParameterError("thin: retention probabilities must lie in [0, 1]");
  }
  PointPattern out;
  out.window = pattern.window;
  for (const auto& p : pattern.points) {
    const double keep = std::clamp(keep_probability.interpolate(p.x, p.y), 0.0, 1.0);
    if (rng.uniform() < keep) out.points.push_back(p);
  }
  return out;
}

PointPattern thin(const PointPattern& pattern, const GridField& keep_probability,
                  std::uint64_t seed) {
  Rng rng(seed);
  return thin(pattern, keep_probability, rng);
}

PointPattern repair_to_base(const PointPattern& pattern_f, const GridField& f,
                            const GridField& psi_hat, const Rect& K, Rng& rng) {
  if (!f.spec.same_as(psi_hat.spec)) {
    throw ParameterError("repair_to_base: f and psi_hat must share one grid");
  }
  PointPattern out;
  out.window = K;
  // Thin the original points on K with p = min(1, 1/f(point)).
  for (const auto& p : pattern_f.points) {
    if (!K.contains(p)) continue;
    const double fv = f.interpolate(p.x, p.y);
    if (!(fv > 0.0)) {
      throw ParameterError("repair_to_base: f must be positive at pattern points");
    }
    const double keep = std::min(1.0, 1.0 / fv);
    if (rng.uniform() < keep) out.points.push_back(p);
  }
  // Top up with PP((1-f)_+ psi_hat) on K.
  GridField topup(f.spec);
  for (std::size_t i = 0; i < topup.values.size(); ++i) {
    const double deficit = std::max(0.0, 1.0 - f.values[i]);
    topup.values[i] = deficit * std::max(0.0, psi_hat.values[i]);
  }
  const PointPattern extra = sample_poisson(topup, K, rng);
  out.points.insert(out.points.end(), extra.points.begin(), extra.points.end());
  return out;
}

PointPattern repair_to_base(const PointPattern& pattern_f, const GridField& f,
                            const GridField& psi_hat, const Rect& K, std::uint64_t seed) {
  Rng rng(seed);
  return repair_to_base(pattern_f, f, psi_hat, K, rng);
}

}  // namespace coxmax
