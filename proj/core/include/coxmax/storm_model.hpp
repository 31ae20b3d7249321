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

#ifndef COXMAX_STORM_MODEL_HPP
#define COXMAX_STORM_MODEL_HPP

#include <cstddef>
#include <vector>

#include "coxmax/gaussian_field.hpp"
#include "coxmax/rng.hpp"

namespace coxmax {

enum class ShapeKind {
  GaussianDensity,  // amplitude * (2 pi)^-1 exp(-|t|^2/2), hard-truncated at R
  DiskIndicator,    // height * 1{|t| <= radius}
};

// One deterministic storm profile. Radially non-increasing, bounded by
// `bound` and supported in the closed ball of radius `trunc_radius`.
struct ShapeComponent {
  ShapeKind kind = ShapeKind::GaussianDensity;
  double weight = 1.0;     // mixture weight
  double amplitude = 1.0;  // Gaussian scaling factor
  double radius = 1.0;     // disk radius
  double height = 1.0;     // disk height
  double trunc_radius = 0.0;
  double bound = 0.0;

  double value(double dist) const;
  double value2(double squared_dist) const;  // same, from |t|^2
  double integral() const;                   // int X(t) dt
};

// (R, C) with X <= C on B_R and X = 0 outside B_R. For these deterministic
// shapes the truncation probabilities are exactly zero, so alpha_p must be 0.
struct TruncationConstants {
  double radius;  // R
  double bound;   // C
};

TruncationConstants truncation_constants(const ShapeComponent& shape, double epsilon,
                                         double alpha_p = 0.0);

// Storm profile distribution: a finite mixture of deterministic components,
// so every E_X reduces to an exact weighted average.
class StormShape {
 public:
  static StormShape gaussian(double epsilon, double amplitude = 1.0);
  static StormShape disk(double radius, double height);
  static StormShape mixture(std::vector<ShapeComponent> components);

  double evaluate(std::size_t component, double dx, double dy) const {
    return components_[component].value2(dx * dx + dy * dy);
  }
  // E_X X(t): exact mixture average.
  double evaluate_mean(double dx, double dy) const;

  std::size_t sample_component(Rng& rng) const;

  double trunc_radius() const { return trunc_radius_; }  // R = max over components
  double bound() const { return bound_; }                // C = max over components
  double integral() const { return integral_; }          // I_X = E_X int X

  std::size_t n_components() const { return components_.size(); }
  const ShapeComponent& component(std::size_t i) const { return components_[i]; }

 private:
  explicit StormShape(std::vector<ShapeComponent> components);
  std::vector<ShapeComponent> components_;
  std::vector<double> cumulative_weight_;
  double trunc_radius_ = 0.0;
  double bound_ = 0.0;
  double integral_ = 0.0;
};

// mu_Y = c_Psi * I_X and mu_Z = mu_Y / c_Psi; with these, Z has standard
// Frechet margins and n^-1 max of n copies of Y converges to Z.
struct ScalingConstants {
  double mu_y;
  double mu_z;
  double c_psi;
};

ScalingConstants scaling_constants(const StormShape& shape, double gaussian_variance,
                                   const IntensityMeanPolicy& policy);

}  // namespace coxmax

#endif  // COXMAX_STORM_MODEL_HPP
