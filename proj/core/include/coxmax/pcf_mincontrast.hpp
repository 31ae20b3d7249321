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

#ifndef COXMAX_PCF_MINCONTRAST_HPP
#define COXMAX_PCF_MINCONTRAST_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "coxmax/covariance.hpp"
#include "coxmax/point_pattern.hpp"

namespace coxmax {

// Isotropic pair correlation estimate on a planar rectangle (d = 2 only):
//   g(r) = |K| / (2 pi n^2 r) sum_{i != j} k_h(r - |s_i - s_j|) b_ij
// with the 1D Epanechnikov kernel k_h and circumference edge weights
// b_ij = 2 pi / gamma_ij, where gamma_ij is the angular measure of the circle
// around s_i through s_j that lies inside K. The n^2 denominator matches the
// estimator as stated (small-sample bias of order 1/n accepted).
struct PCFEstimate {
  std::vector<double> radii;
  std::vector<double> values;
  double bandwidth = 0.0;
  Rect window;
  std::size_t n_points = 0;
  std::size_t pairs_used = 0;
  std::size_t pairs_dropped = 0;  // gamma_ij = 0
};

PCFEstimate estimate_pcf(const PointPattern& pattern, const Rect& K,
                         const std::vector<double>& radii, double bandwidth);

// Evenly spaced radii grid {start, start+step, ..., <= stop}.
std::vector<double> radii_grid(double start, double stop, double step);

// Pair correlation of the log-Gaussian Cox process: g(r) = exp(sigma^2 C(r)).
double lgcp_pcf(const CovarianceModel& model, double r);

// Contrast d(T, T_hat) = int_eps^r0 (T(r)^alpha - T_hat(r)^alpha)^2 dr with
// T = sigma^2 C_beta and T_hat = log g_hat.
struct ContrastConfig {
  double epsilon = 0.0;  // lower integration limit, >= 0
  double r0 = 1.0;       // upper integration limit, > epsilon
  double alpha = 1.0;
  double beta_lo = 0.1;  // scale search bracket
  double beta_hi = 10.0;
  double search_tol = 1e-6;
};

struct MinContrastResult {
  bool ok = false;
  double sigma2_hat = 0.0;
  double beta_hat = 0.0;
  double contrast = 0.0;
  std::size_t pairs_used = 0;
  std::string failure;  // set when !ok (e.g. A(beta_hat) <= 0)
};

// Closed-form profile over sigma^2 with a golden-section search over beta:
//   beta_hat = argmax A(beta)^2 / B(beta),
//   sigma2_hat = (A(beta_hat) / B(beta_hat))^(1/alpha),
//   A = int [log g_hat C_beta]^alpha, B = int C_beta^(2 alpha),
// integrals by trapezoid on the estimate's radii inside [eps, r0]. Radii with
// g_hat <= 0 are excluded from both integrals. Ties break toward smaller
// beta. `family` supplies the correlation family and fixed smoothness; its
// variance and scale entries are ignored.
MinContrastResult minimum_contrast(const PCFEstimate& pcf, const CovarianceModel& family,
                                   const ContrastConfig& config);

}  // namespace coxmax

#endif  // COXMAX_PCF_MINCONTRAST_HPP
