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

#ifndef COXMAX_COVARIANCE_HPP
#define COXMAX_COVARIANCE_HPP

#include <limits>
#include <map>
#include <string>

namespace coxmax {

enum class CovFamily {
  WhittleMatern,
  PoweredExponential,
};

// Stationary, isotropic covariance sigma^2 * C_beta(h) with C_beta(h) = C(h/beta).
//
// Whittle-Matern (unit scale):
//   C(u) = 2^(1-nu)/Gamma(nu) (sqrt(2 nu) u)^nu K_nu(sqrt(2 nu) u),
// with smoothness nu = +inf meaning the Gaussian limit exp(-u^2/2).
// Powered exponential: C(u) = exp(-u^alpha), alpha in (0, 2].
struct CovarianceModel {
  CovFamily family = CovFamily::WhittleMatern;
  double variance = 1.0;    // sigma^2 > 0
  double scale = 1.0;       // beta > 0, length units
  double smoothness = 1.0;  // nu > 0 or +inf (Matern only)
  double exponent = 1.0;    // alpha in (0,2] (powered exponential only)

  static CovarianceModel matern(double variance, double scale, double nu);
  static CovarianceModel squared_exponential(double variance, double scale);
  static CovarianceModel powered_exponential(double variance, double scale, double alpha);

  void validate() const;

  // Correlation C_beta(h) in [0, 1]; C_beta(0) = 1 exactly.
  double correlation(double h) const;

  // Covariance sigma^2 * C_beta(h); evaluate(0) = sigma^2 exactly.
  double evaluate(double h) const;

  CovarianceModel with_scale(double beta) const {
    CovarianceModel m = *this;
    m.scale = beta;
    return m;
  }
};

inline constexpr double kInfSmoothness = std::numeric_limits<double>::infinity();

// Numeric witnesses for the Hoelder bound 1 - C(h) < M ||h||^a, verified on a
// log-spaced grid of lags in (0, beta].
struct ContinuityWitness {
  bool holds = false;
  double bound_constant = 0.0;   // M
  double holder_exponent = 0.0;  // a
};

ContinuityWitness check_sample_continuity(const CovarianceModel& model);

// Key-value serialization: family, variance, scale, nu, alpha.
std::map<std::string, std::string> covariance_to_entries(const CovarianceModel& model);
CovarianceModel covariance_from_entries(const std::map<std::string, std::string>& entries);

}  // namespace coxmax

#endif  // COXMAX_COVARIANCE_HPP
