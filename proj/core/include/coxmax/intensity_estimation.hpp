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

#ifndef COXMAX_INTENSITY_ESTIMATION_HPP
#define COXMAX_INTENSITY_ESTIMATION_HPP

#include <cstddef>
#include <vector>

#include "coxmax/grid.hpp"
#include "coxmax/point_pattern.hpp"
#include "coxmax/storm_model.hpp"

namespace coxmax {

// 2D Epanechnikov kernel (2/pi)(1 - |s|^2) on the unit disk; unit mass.
double epanechnikov2(double x, double y);

enum class EdgeCorrection {
  Ripley,  // local-mass weights c_D(t)
  None,
};

struct KernelConfig {
  double bandwidth = 0.0;  // h > 0
  EdgeCorrection edge = EdgeCorrection::Ripley;
  // Stability radius R~ <= R for the corrected estimator: the quotient is
  // only formed within distance R~ of K. 0 picks the default radius where the
  // Gaussian profile has decayed to 1% of its peak.
  double stability_radius = 0.0;
  double b_floor = 1e-8;  // quotient nodes with b below this are masked
};

// Count-based default bandwidth 0.7 sqrt(area / count).
double default_bandwidth(double window_area, std::size_t count);

// Intensity distortion of threshold-exceedance centres relative to psi:
// b(s) = mu_Y^-1 E_X max over grid nodes t of K, |t-s| <= R, of X(t-s)/y(t).
// E_X is the exact mixture average. Evaluated on the nodes of out_grid.
struct CorrectionField {
  GridField b;
  double mu_y = 0.0;
  Rect K;
};

CorrectionField correcting_factor(const GridField& y, const Rect& K, const StormShape& shape,
                                  double mu_y, const GridSpec& out_grid,
                                  bool full_scan = false);

// Edge-corrected kernel intensity estimate from the points of `pattern`
// inside D, evaluated on out_grid:
//   psi_y(s) = h^-2 sum_t c_D(t)^-1 k((s - t)/h),
// with Ripley weights c_D(t) = h^-2 int_D k((s-t)/h) ds evaluated by midpoint
// quadrature on out_grid. By construction the midpoint integral of the
// estimate over D returns the point count exactly.
struct KernelEstimate {
  GridField field;
  double bandwidth = 0.0;
  bool bandwidth_warning = false;       // h under-resolved by the grid
  std::size_t dropped_zero_weight = 0;  // points with vanishing c_D
  std::size_t points_used = 0;
};

KernelEstimate kernel_intensity(const PointPattern& pattern, const Rect& D,
                                const GridSpec& out_grid, const KernelConfig& config);

// The corrected estimator psi_hat = psi_y_hat / b restricted to K + B_Rtilde.
// Nodes outside the stability region or with b below b_floor are masked
// (mask 0, value 0).
struct CorrectedIntensity {
  GridField psi_hat;
  GridField mask;  // 1 valid, 0 masked
  std::size_t masked_count = 0;
};

CorrectedIntensity corrected_intensity(const GridField& psi_y_hat, const CorrectionField& b,
                                       const KernelConfig& config);

// Pooled kernel estimators over growing pattern subsets (asymptotic
// diagnostic): for each checkpoint n, pools the points of patterns[0..n) and
// returns the density-style estimate (1 / (m h^2)) sum k((s - t_i)/h) without
// edge correction. Fields are normalized to unit mass over the plane, so
// comparisons against b psi require the c_K^y scaling by the caller.
std::vector<GridField> asymptotic_kernel_estimator(const std::vector<PointPattern>& patterns,
                                                   const std::vector<std::size_t>& checkpoints,
                                                   const std::vector<double>& bandwidths,
                                                   const GridSpec& out_grid);

}  // namespace coxmax

#endif  // COXMAX_INTENSITY_ESTIMATION_HPP
