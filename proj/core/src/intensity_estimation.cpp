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

#include "coxmax/intensity_estimation.hpp"

#include <algorithm>
#include <cmath>

#include "coxmax/errors.hpp"

namespace coxmax {

namespace {
constexpr double kPi = 3.14159265358979323846264338328;
constexpr double kDefaultStabilityDecay = 0.01;  // X(R~) = 1% of the peak
}  // namespace

double epanechnikov2(double x, double y) {
  const double d2 = x * x + y * y;
  if (d2 >= 1.0) return 0.0;
  return 2.0 / kPi * (1.0 - d2);
}

double default_bandwidth(double window_area, std::size_t count) {
  if (count == 0 || !(window_area > 0.0)) {
    throw ParameterError("default_bandwidth: needs a nonempty pattern and window");
  }
  return 0.7 * std::sqrt(window_area / static_cast<double>(count));
}

CorrectionField correcting_factor(const GridField& y, const Rect& K, const StormShape& shape,
                                  double mu_y, const GridSpec& out_grid, bool full_scan) {
  if (!(mu_y > 0.0)) throw ParameterError("correcting_factor: mu_y must be positive");
  out_grid.validate();

  // Collect the grid nodes of y inside K once.
  const auto& yspec = y.spec;
  std::vector<double> node_x, node_y, node_val;
  for (std::size_t iy = 0; iy < yspec.ny; ++iy) {
    const double ny = yspec.node_y(iy);
    if (ny < K.ymin || ny > K.ymax) continue;
    for (std::size_t ix = 0; ix < yspec.nx; ++ix) {
      const double nx = yspec.node_x(ix);
      if (nx < K.xmin || nx > K.xmax) continue;
      const double v = y.at(ix, iy);
      if (!(v > 0.0)) throw ParameterError("correcting_factor: y must be positive on K");
      node_x.push_back(nx);
      node_y.push_back(ny);
      node_val.push_back(v);
    }
  }
  if (node_x.empty()) throw SizeError("correcting_factor: K holds no grid nodes of y");

  CorrectionField out;
  out.mu_y = mu_y;
  out.K = K;
  out.b = GridField(out_grid, 0.0);
  const std::size_t n_nodes = node_x.size();
  for (std::size_t iy = 0; iy < out_grid.ny; ++iy) {
    const double sy = out_grid.node_y(iy);
    for (std::size_t ix = 0; ix < out_grid.nx; ++ix) {
      const double sx = out_grid.node_x(ix);
      double mixture = 0.0;
      for (std::size_t c = 0; c < shape.n_components(); ++c) {
        const ShapeComponent& comp = shape.component(c);
        const double r2 = comp.trunc_radius * comp.trunc_radius;
        double sup = 0.0;
        for (std::size_t k = 0; k < n_nodes; ++k) {
          const double dx = node_x[k] - sx;
          const double dy = node_y[k] - sy;
          const double d2 = dx * dx + dy * dy;
          if (!full_scan && d2 > r2) continue;
          const double ratio = comp.value2(d2) / node_val[k];
          sup = std::max(sup, ratio);
        }
        mixture += comp.weight * sup;
      }
      out.b.at(ix, iy) = mixture / mu_y;
    }
  }
  return out;
}

KernelEstimate kernel_intensity(const PointPattern& pattern, const Rect& D,
                                const GridSpec& out_grid, const KernelConfig& config) {
  if (!(config.bandwidth > 0.0)) {
    throw ParameterError("kernel_intensity: bandwidth must be positive");
  }
  out_grid.validate();
  const double h = config.bandwidth;
  const double inv_h2 = 1.0 / (h * h);
  KernelEstimate out;
  out.bandwidth = h;
  out.bandwidth_warning = h < 2.0 * std::max(out_grid.dx, out_grid.dy);
  out.field = GridField(out_grid, 0.0);

  // Node-in-D lookup, reused for the point sums and the c_D quadrature.
  std::vector<char> in_d(out_grid.size(), 0);
  for (std::size_t iy = 0; iy < out_grid.ny; ++iy) {
    const double ny = out_grid.node_y(iy);
    if (ny < D.ymin || ny > D.ymax) continue;
    for (std::size_t ix = 0; ix < out_grid.nx; ++ix) {
      const double nx = out_grid.node_x(ix);
      if (nx < D.xmin || nx > D.xmax) continue;
      in_d[out_grid.index(ix, iy)] = 1;
    }
  }

  const double cell = out_grid.cell_area();
  const auto window = [&](double cx, double cy) {
    struct {
      std::size_t ix_lo, ix_hi, iy_lo, iy_hi;
      bool empty;
    } w{};
    const double fx_lo = std::ceil((cx - h - out_grid.x0) / out_grid.dx);
    const double fx_hi = std::floor((cx + h - out_grid.x0) / out_grid.dx);
    const double fy_lo = std::ceil((cy - h - out_grid.y0) / out_grid.dy);
    const double fy_hi = std::floor((cy + h - out_grid.y0) / out_grid.dy);
    w.empty = fx_hi < 0 || fy_hi < 0 || fx_lo > static_cast<double>(out_grid.nx - 1) ||
              fy_lo > static_cast<double>(out_grid.ny - 1);
    if (!w.empty) {
      w.ix_lo = static_cast<std::size_t>(std::max(0.0, fx_lo));
      w.ix_hi =
          static_cast<std::size_t>(std::min(static_cast<double>(out_grid.nx - 1), fx_hi));
      w.iy_lo = static_cast<std::size_t>(std::max(0.0, fy_lo));
      w.iy_hi =
          static_cast<std::size_t>(std::min(static_cast<double>(out_grid.ny - 1), fy_hi));
      w.empty = w.ix_lo > w.ix_hi || w.iy_lo > w.iy_hi;
    }
    return w;
  };

  for (const auto& p : pattern.points) {
    if (!D.contains(p)) continue;
    ++out.points_used;
    double weight = 1.0;
    if (config.edge == EdgeCorrection::Ripley) {
      // c_D(t) = h^-2 sum over out_grid nodes in D of k((s - t)/h) * cell.
      double c_d = 0.0;
      const auto w = window(p.x, p.y);
      if (!w.empty) {
        for (std::size_t iy = w.iy_lo; iy <= w.iy_hi; ++iy) {
          const double sy = out_grid.node_y(iy);
          for (std::size_t ix = w.ix_lo; ix <= w.ix_hi; ++ix) {
            if (!in_d[out_grid.index(ix, iy)]) continue;
            const double sx = out_grid.node_x(ix);
            c_d += epanechnikov2((sx - p.x) / h, (sy - p.y) / h);
          }
        }
      }
      c_d *= inv_h2 * cell;
      if (c_d <= 0.0) {
        ++out.dropped_zero_weight;
        --out.points_used;
        continue;
      }
      weight = 1.0 / c_d;
    }
    const auto w = window(p.x, p.y);
    if (w.empty) continue;
    for (std::size_t iy = w.iy_lo; iy <= w.iy_hi; ++iy) {
      const double sy = out_grid.node_y(iy);
      for (std::size_t ix = w.ix_lo; ix <= w.ix_hi; ++ix) {
        if (!in_d[out_grid.index(ix, iy)]) continue;
        const double sx = out_grid.node_x(ix);
        out.field.at(ix, iy) +=
            weight * inv_h2 * epanechnikov2((sx - p.x) / h, (sy - p.y) / h);
      }
    }
  }
  return out;
}

CorrectedIntensity corrected_intensity(const GridField& psi_y_hat, const CorrectionField& b,
                                       const KernelConfig& config) {
  if (!psi_y_hat.spec.same_as(b.b.spec)) {
    throw ParameterError("corrected_intensity: estimate and correction grids differ");
  }
  double r_tilde = config.stability_radius;
  if (r_tilde <= 0.0) {
    // Default: radius where the Gaussian profile falls to 1% of its peak.
    r_tilde = std::sqrt(-2.0 * std::log(kDefaultStabilityDecay));
  }
  CorrectedIntensity out;
  out.psi_hat = GridField(psi_y_hat.spec, 0.0);
  out.mask = GridField(psi_y_hat.spec, 0.0);
  const auto& spec = psi_y_hat.spec;
  for (std::size_t iy = 0; iy < spec.ny; ++iy) {
    const double y = spec.node_y(iy);
    for (std::size_t ix = 0; ix < spec.nx; ++ix) {
      const double x = spec.node_x(ix);
      const std::size_t i = spec.index(ix, iy);
      const bool in_region = b.K.distance(x, y) <= r_tilde;
      const double bv = b.b.values[i];
      if (!in_region || bv < config.b_floor) {
        ++out.masked_count;
        continue;
      }
      out.psi_hat.values[i] = psi_y_hat.values[i] / bv;
      out.mask.values[i] = 1.0;
    }
  }
  return out;
}

std::vector<GridField> asymptotic_kernel_estimator(const std::vector<PointPattern>& patterns,
                                                   const std::vector<std::size_t>& checkpoints,
                                                   const std::vector<double>& bandwidths,
                                                   const GridSpec& out_grid) {
  if (checkpoints.size() != bandwidths.size()) {
    throw ParameterError("asymptotic_kernel_estimator: checkpoint/bandwidth mismatch");
  }
  out_grid.validate();
  std::vector<GridField> fields;
  fields.reserve(checkpoints.size());
  for (std::size_t c = 0; c < checkpoints.size(); ++c) {
    const std::size_t n = checkpoints[c];
    if (n == 0 || n > patterns.size()) {
      throw ParameterError("asymptotic_kernel_estimator: checkpoint out of range");
    }
    const double h = bandwidths[c];
    if (!(h > 0.0)) throw ParameterError("asymptotic_kernel_estimator: bandwidth <= 0");
    std::size_t m = 0;
    GridField field(out_grid, 0.0);
    for (std::size_t i = 0; i < n; ++i) m += patterns[i].points.size();
    if (m == 0) throw ParameterError("asymptotic_kernel_estimator: empty point pool");
    const double scale = 1.0 / (static_cast<double>(m) * h * h);
    for (std::size_t i = 0; i < n; ++i) {
      for (const auto& p : patterns[i].points) {
        for (std::size_t iy = 0; iy < out_grid.ny; ++iy) {
          const double sy = out_grid.node_y(iy);
          if (std::abs(sy - p.y) >= h) continue;
          for (std::size_t ix = 0; ix < out_grid.nx; ++ix) {
            const double sx = out_grid.node_x(ix);
            const double k = epanechnikov2((sx - p.x) / h, (sy - p.y) / h);
            if (k > 0.0) field.at(ix, iy) += scale * k;
          }
        }
      }
    }
    fields.push_back(std::move(field));
  }
  return fields;
}

}  // namespace coxmax
