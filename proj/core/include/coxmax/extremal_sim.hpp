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

#ifndef COXMAX_EXTREMAL_SIM_HPP
#define COXMAX_EXTREMAL_SIM_HPP

#include <cstdint>
#include <vector>

#include "coxmax/gaussian_field.hpp"
#include "coxmax/grid.hpp"
#include "coxmax/point_pattern.hpp"
#include "coxmax/storm_model.hpp"

namespace coxmax {

// One storm of the truncated spectral construction. Events are recorded in
// strictly increasing Gamma_i (decreasing level) order.
struct StormEvent {
  double sx = 0.0;
  double sy = 0.0;
  double level = 0.0;  // u_i = nu_psi(D_R) / (mu_Y Gamma_i)
  std::uint32_t shape_component = 0;
  bool contributes = false;  // attains the final maximum somewhere on D
};

struct SimOptions {
  std::size_t max_events = 1000000;
  // Storm centres are drawn from the cells of psi's grid whose centres lie
  // within this distance of the domain. 0 means the exact default
  // trunc_radius + half cell diagonal, which covers every position a storm
  // could reach the domain from.
  double sampling_radius = 0.0;
  // Extra storms drawn and applied after the stopping time; they can never
  // change the field and exist for exactness checks.
  std::size_t post_stop_events = 0;
};

// Exact draw of the conditionally max-stable field on the grid nodes of D,
// given one intensity realization psi on a grid covering D inflated by the
// storm truncation radius. The single approximation in the construction is
// that psi is treated as piecewise constant over its grid cells.
struct SimulationResult {
  GridField field;                 // Y on the D sub-grid
  std::vector<StormEvent> events;  // events 1..T
  std::vector<StormEvent> post_stop_events;
  std::size_t stopping_index = 0;  // T == events.size()
  double nu_psi = 0.0;             // psi mass of the sampling region
  double mu_y = 0.0;
  Rect domain;                            // D
  GridField psi;                          // intensity realization used
  std::vector<ShapeComponent> shape;      // mixture components used
  double sampling_radius = 0.0;           // region radius actually applied
  double gamma_after_stop = 0.0;          // Gamma_{T+1}
  double min_field_value = 0.0;           // min over D nodes at the stop
};

SimulationResult simulate_extremal(const GridField& psi, const StormShape& shape,
                                   double mu_y, const Rect& domain, std::uint64_t seed,
                                   const SimOptions& options = {});

// Mixed moving maxima field: simulate_extremal with unit intensity on the
// given grid and mu_z as scaling constant.
SimulationResult simulate_mmm(const StormShape& shape, double mu_z, const Rect& domain,
                              const GridSpec& unit_grid, std::uint64_t seed,
                              const SimOptions& options = {});

// Centres whose storms attain the simulated maximum at some grid node of K
// (relative tie tolerance 1e-12). The returned window is the bounding
// rectangle of K inflated by the truncation radius; the support itself lies
// within distance R of K.
PointPattern extract_contributing(const SimulationResult& result, const Rect& K);

// Exact draw of the threshold-exceedance centre process for a *fixed* field
// y on K: all storm centres s with u X(t - s) >= y(t) at some grid node t of
// K. Distributed as a Poisson process with intensity b_K^y(s) psi(s).
PointPattern sample_exceedance_centres(const GridField& psi, const StormShape& shape,
                                       double mu_y, const GridField& y, const Rect& K,
                                       std::uint64_t seed,
                                       const SimOptions& options = {});

// Block-maxima experiment: n^-1 max of n_blocks independent copies of Y,
// each with a fresh intensity realization from the sampler.
struct MdaSetup {
  const GaussianFieldSampler* sampler = nullptr;  // psi sampler, extended grid
  IntensityMeanPolicy policy;
  const StormShape* shape = nullptr;
  Rect domain;
  SimOptions options;
};

GridField block_maxima_mda(const MdaSetup& setup, int n_blocks, std::uint64_t seed);

}  // namespace coxmax

#endif  // COXMAX_EXTREMAL_SIM_HPP
