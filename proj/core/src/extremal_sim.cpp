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

#include "coxmax/extremal_sim.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "coxmax/errors.hpp"

namespace coxmax {

namespace {

constexpr double kTieTolerance = 1e-12;

double half_diagonal(const GridSpec& spec) {
  return 0.5 * std::hypot(spec.dx, spec.dy);
}

// Cells of psi's grid whose centres lie within `radius` of `domain`. With the
// default radius R + half diagonal this region contains every position from
// which a storm can reach the domain, so restricting the centre process to it
// is exact.
struct SamplingRegion {
  std::vector<std::size_t> cells;  // flat cell indices
  std::vector<double> cumulative;  // cumulative psi * cell area
  double total = 0.0;              // nu_psi of the region
};

SamplingRegion build_region(const GridField& psi, const Rect& domain, double radius) {
  const auto& s = psi.spec;
  const Rect needed = domain.inflate(radius);
  const Rect covered = s.cell_extent();
  const double tol = 1e-9 * (s.dx + s.dy);
  if (needed.xmin < covered.xmin - tol || needed.xmax > covered.xmax + tol ||
      needed.ymin < covered.ymin - tol || needed.ymax > covered.ymax + tol) {
    throw SizeError(
        "simulate_extremal: psi grid does not cover the domain inflated by the "
        "sampling radius");
  }
  SamplingRegion region;
  const double area = s.cell_area();
  double acc = 0.0;
  for (std::size_t iy = 0; iy < s.ny; ++iy) {
    const double y = s.node_y(iy);
    for (std::size_t ix = 0; ix < s.nx; ++ix) {
      const double x = s.node_x(ix);
      if (domain.distance(x, y) > radius) continue;
      const double v = psi.at(ix, iy);
      if (!(v > 0.0)) {
        throw ParameterError("simulate_extremal: psi must be strictly positive on D_R");
      }
      acc += v * area;
      region.cells.push_back(s.index(ix, iy));
      region.cumulative.push_back(acc);
    }
  }
  region.total = acc;
  if (region.cells.empty()) {
    throw SizeError("simulate_extremal: sampling region holds no grid cells");
  }
  return region;
}

Point sample_centre(const SamplingRegion& region, const GridSpec& spec, Rng& rng) {
  const double u = rng.uniform() * region.total;
  const auto it = std::lower_bound(region.cumulative.begin(), region.cumulative.end(), u);
  std::size_t pos = static_cast<std::size_t>(it - region.cumulative.begin());
  pos = std::min(pos, region.cells.size() - 1);
  const std::size_t flat = region.cells[pos];
  const std::size_t ix = flat % spec.nx;
  const std::size_t iy = flat / spec.nx;
  return {spec.node_x(ix) + (rng.uniform() - 0.5) * spec.dx,
          spec.node_y(iy) + (rng.uniform() - 0.5) * spec.dy};
}

// Grid-index window touched by a ball around (sx, sy).
struct NodeWindow {
  std::size_t ix_lo = 0, ix_hi = 0, iy_lo = 0, iy_hi = 0;
  bool empty = true;
};

NodeWindow window_around(const GridSpec& spec, double sx, double sy, double radius) {
  NodeWindow w;
  const double fx_lo = std::ceil((sx - radius - spec.x0) / spec.dx);
  const double fx_hi = std::floor((sx + radius - spec.x0) / spec.dx);
  const double fy_lo = std::ceil((sy - radius - spec.y0) / spec.dy);
  const double fy_hi = std::floor((sy + radius - spec.y0) / spec.dy);
  if (fx_hi < 0 || fy_hi < 0 || fx_lo > static_cast<double>(spec.nx - 1) ||
      fy_lo > static_cast<double>(spec.ny - 1)) {
    return w;
  }
  w.ix_lo = static_cast<std::size_t>(std::max(0.0, fx_lo));
  w.ix_hi = static_cast<std::size_t>(std::min(static_cast<double>(spec.nx - 1), fx_hi));
  w.iy_lo = static_cast<std::size_t>(std::max(0.0, fy_lo));
  w.iy_hi = static_cast<std::size_t>(std::min(static_cast<double>(spec.ny - 1), fy_hi));
  w.empty = w.ix_lo > w.ix_hi || w.iy_lo > w.iy_hi;
  return w;
}

// Sub-grid of `spec` restricted to the domain rectangle.
GridSpec domain_subgrid(const GridSpec& spec, const Rect& domain) {
  std::size_t ix_lo = spec.nx, ix_hi = 0, iy_lo = spec.ny, iy_hi = 0;
  for (std::size_t ix = 0; ix < spec.nx; ++ix) {
    const double x = spec.node_x(ix);
    if (x < domain.xmin || x > domain.xmax) continue;
    ix_lo = std::min(ix_lo, ix);
    ix_hi = std::max(ix_hi, ix);
  }
  for (std::size_t iy = 0; iy < spec.ny; ++iy) {
    const double y = spec.node_y(iy);
    if (y < domain.ymin || y > domain.ymax) continue;
    iy_lo = std::min(iy_lo, iy);
    iy_hi = std::max(iy_hi, iy);
  }
  if (ix_lo > ix_hi || iy_lo > iy_hi) {
    throw SizeError("simulate_extremal: domain holds no grid nodes");
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

// Applies one storm to the running maximum; reports whether a node at the
// current minimum was raised.
bool apply_storm(GridField& field, const ShapeComponent& comp, double sx, double sy,
                 double level, double min_value) {
  const auto& spec = field.spec;
  const NodeWindow w = window_around(spec, sx, sy, comp.trunc_radius);
  if (w.empty) return false;
  bool touched_min = false;
  for (std::size_t iy = w.iy_lo; iy <= w.iy_hi; ++iy) {
    const double dy = spec.node_y(iy) - sy;
    for (std::size_t ix = w.ix_lo; ix <= w.ix_hi; ++ix) {
      const double dx = spec.node_x(ix) - sx;
      const double v = level * comp.value2(dx * dx + dy * dy);
      double& node = field.at(ix, iy);
      if (v > node) {
        if (node == min_value) touched_min = true;
        node = v;
      }
    }
  }
  return touched_min;
}

std::vector<ShapeComponent> copy_components(const StormShape& shape) {
  std::vector<ShapeComponent> comps;
  comps.reserve(shape.n_components());
  for (std::size_t i = 0; i < shape.n_components(); ++i) comps.push_back(shape.component(i));
  return comps;
}

}  // namespace

SimulationResult simulate_extremal(const GridField& psi, const StormShape& shape,
                                   double mu_y, const Rect& domain, std::uint64_t seed,
                                   const SimOptions& options) {
  if (!(mu_y > 0.0)) throw ParameterError("simulate_extremal: mu_y must be positive");
  const double radius = options.sampling_radius > 0.0
                            ? options.sampling_radius
                            : shape.trunc_radius() + half_diagonal(psi.spec);
  const double bound = shape.bound();
  const SamplingRegion region = build_region(psi, domain, radius);

  SimulationResult result;
  result.domain = domain;
  result.nu_psi = region.total;
  result.mu_y = mu_y;
  result.psi = psi;
  result.shape = copy_components(shape);
  result.sampling_radius = radius;
  result.field = GridField(domain_subgrid(psi.spec, domain), 0.0);

  const double level_scale = region.total / mu_y;  // u_i = level_scale / Gamma_i
  Rng rng(seed);
  double gamma = 0.0;
  double min_value = 0.0;
  std::size_t n = 0;
  for (;;) {
    gamma += rng.exponential();  // Gamma_{n+1}
    const double level = level_scale / gamma;
    if (min_value > 0.0 && level * bound <= min_value) {
      result.gamma_after_stop = gamma;
      break;
    }
    if (n >= options.max_events) {
      throw RunawayError("simulate_extremal: event cap " +
                         std::to_string(options.max_events) + " reached; min " +
                         std::to_string(min_value) + " vs threshold " +
                         std::to_string(level * bound));
    }
    ++n;
    const Point s = sample_centre(region, psi.spec, rng);
    const auto component = static_cast<std::uint32_t>(shape.sample_component(rng));
    const bool touched_min =
        apply_storm(result.field, result.shape[component], s.x, s.y, level, min_value);
    if (touched_min || min_value == 0.0) min_value = result.field.min_value();
    result.events.push_back({s.x, s.y, level, component, false});
  }
  result.stopping_index = n;
  result.min_field_value = min_value;

  // Post-stop storms cannot alter the field; they exist for exactness checks.
  double post_gamma = result.gamma_after_stop;
  for (std::size_t k = 0; k < options.post_stop_events; ++k) {
    const double level = level_scale / post_gamma;
    const Point s = sample_centre(region, psi.spec, rng);
    const auto component = static_cast<std::uint32_t>(shape.sample_component(rng));
    apply_storm(result.field, result.shape[component], s.x, s.y, level, min_value);
    result.post_stop_events.push_back({s.x, s.y, level, component, false});
    post_gamma += rng.exponential();
  }

  // Contribution flags: a storm contributes when it attains the final
  // maximum at some node of D.
  const auto& spec = result.field.spec;
  for (auto& event : result.events) {
    const ShapeComponent& comp = result.shape[event.shape_component];
    const NodeWindow w = window_around(spec, event.sx, event.sy, comp.trunc_radius);
    if (w.empty) continue;
    for (std::size_t iy = w.iy_lo; iy <= w.iy_hi && !event.contributes; ++iy) {
      const double dy = spec.node_y(iy) - event.sy;
      for (std::size_t ix = w.ix_lo; ix <= w.ix_hi; ++ix) {
        const double dx = spec.node_x(ix) - event.sx;
        const double v = event.level * comp.value2(dx * dx + dy * dy);
        if (v > 0.0 && v >= result.field.at(ix, iy) * (1.0 - kTieTolerance)) {
          event.contributes = true;
          break;
        }
      }
    }
  }
  return result;
}

SimulationResult simulate_mmm(const StormShape& shape, double mu_z, const Rect& domain,
                              const GridSpec& unit_grid, std::uint64_t seed,
                              const SimOptions& options) {
  return simulate_extremal(constant_field(unit_grid, 1.0), shape, mu_z, domain, seed,
                           options);
}

PointPattern extract_contributing(const SimulationResult& result, const Rect& K) {
  if (K.xmin < result.domain.xmin - 1e-12 || K.xmax > result.domain.xmax + 1e-12 ||
      K.ymin < result.domain.ymin - 1e-12 || K.ymax > result.domain.ymax + 1e-12) {
    throw SizeError("extract_contributing: K must be contained in the simulated domain");
  }
  double max_radius = 0.0;
  for (const auto& comp : result.shape) max_radius = std::max(max_radius, comp.trunc_radius);

  PointPattern pattern;
  pattern.window = K.inflate(max_radius);
  const auto& spec = result.field.spec;
  for (const auto& event : result.events) {
    const ShapeComponent& comp = result.shape[event.shape_component];
    const NodeWindow w = window_around(spec, event.sx, event.sy, comp.trunc_radius);
    if (w.empty) continue;
    bool attains = false;
    for (std::size_t iy = w.iy_lo; iy <= w.iy_hi && !attains; ++iy) {
      const double y = spec.node_y(iy);
      if (y < K.ymin || y > K.ymax) continue;
      const double dy = y - event.sy;
      for (std::size_t ix = w.ix_lo; ix <= w.ix_hi; ++ix) {
        const double x = spec.node_x(ix);
        if (x < K.xmin || x > K.xmax) continue;
        const double dx = x - event.sx;
        const double v = event.level * comp.value2(dx * dx + dy * dy);
        if (v > 0.0 && v >= result.field.at(ix, iy) * (1.0 - kTieTolerance)) {
          attains = true;
          break;
        }
      }
    }
    if (attains) pattern.points.push_back({event.sx, event.sy});
  }
  return pattern;
}

PointPattern sample_exceedance_centres(const GridField& psi, const StormShape& shape,
                                       double mu_y, const GridField& y, const Rect& K,
                                       std::uint64_t seed, const SimOptions& options) {
  if (!(mu_y > 0.0)) {
    throw ParameterError("sample_exceedance_centres: mu_y must be positive");
  }
  const double radius = options.sampling_radius > 0.0
                            ? options.sampling_radius
                            : shape.trunc_radius() + half_diagonal(psi.spec);
  const double bound = shape.bound();
  const SamplingRegion region = build_region(psi, K, radius);

  const auto& yspec = y.spec;
  double y_min = 0.0;
  bool any_node = false;
  for (std::size_t iy = 0; iy < yspec.ny; ++iy) {
    const double node_y = yspec.node_y(iy);
    if (node_y < K.ymin || node_y > K.ymax) continue;
    for (std::size_t ix = 0; ix < yspec.nx; ++ix) {
      const double node_x = yspec.node_x(ix);
      if (node_x < K.xmin || node_x > K.xmax) continue;
      const double v = y.at(ix, iy);
      if (!(v > 0.0)) {
        throw ParameterError("sample_exceedance_centres: y must be positive on K");
      }
      y_min = any_node ? std::min(y_min, v) : v;
      any_node = true;
    }
  }
  if (!any_node) throw SizeError("sample_exceedance_centres: K holds no grid nodes");

  PointPattern pattern;
  pattern.window = K.inflate(shape.trunc_radius());
  const double level_scale = region.total / mu_y;
  Rng rng(seed);
  double gamma = 0.0;
  std::size_t n = 0;
  for (;;) {
    gamma += rng.exponential();
    const double level = level_scale / gamma;
    if (level * bound < y_min) break;  // no further storm can cross y on K
    if (n >= options.max_events) {
      throw RunawayError("sample_exceedance_centres: event cap reached");
    }
    ++n;
    const Point s = sample_centre(region, psi.spec, rng);
    const auto component = static_cast<std::uint32_t>(shape.sample_component(rng));
    const ShapeComponent& comp = shape.component(component);
    const NodeWindow w = window_around(yspec, s.x, s.y, comp.trunc_radius);
    if (w.empty) continue;
    bool crosses = false;
    for (std::size_t iy = w.iy_lo; iy <= w.iy_hi && !crosses; ++iy) {
      const double node_y = yspec.node_y(iy);
      if (node_y < K.ymin || node_y > K.ymax) continue;
      const double dy = node_y - s.y;
      for (std::size_t ix = w.ix_lo; ix <= w.ix_hi; ++ix) {
        const double node_x = yspec.node_x(ix);
        if (node_x < K.xmin || node_x > K.xmax) continue;
        const double dx = node_x - s.x;
        if (level * comp.value2(dx * dx + dy * dy) >= y.at(ix, iy)) {
          crosses = true;
          break;
        }
      }
    }
    if (crosses) pattern.points.push_back(s);
  }
  return pattern;
}

GridField block_maxima_mda(const MdaSetup& setup, int n_blocks, std::uint64_t seed) {
  if (setup.sampler == nullptr || setup.shape == nullptr) {
    throw ParameterError("block_maxima_mda: sampler and shape are required");
  }
  if (n_blocks < 1) throw ParameterError("block_maxima_mda: need n_blocks >= 1");
  const ScalingConstants sc =
      scaling_constants(*setup.shape, setup.sampler->model().variance, setup.policy);
  GridField combined;
  for (int b = 0; b < n_blocks; ++b) {
    Rng psi_rng(derive_seed(seed, 2 * static_cast<std::uint64_t>(b)));
    const GridField psi = setup.sampler->draw_log_gaussian(setup.policy, psi_rng);
    const SimulationResult sim =
        simulate_extremal(psi, *setup.shape, sc.mu_y, setup.domain,
                          derive_seed(seed, 2 * static_cast<std::uint64_t>(b) + 1),
                          setup.options);
    if (b == 0) {
      combined = sim.field;
    } else {
      for (std::size_t i = 0; i < combined.values.size(); ++i) {
        combined.values[i] = std::max(combined.values[i], sim.field.values[i]);
      }
    }
  }
  const double inv = 1.0 / static_cast<double>(n_blocks);
  for (auto& v : combined.values) v *= inv;
  return combined;
}

}  // namespace coxmax
