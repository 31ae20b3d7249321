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

#include "coxmax/storm_model.hpp"

#include <cmath>
#include <numeric>
#include <utility>

#include "coxmax/errors.hpp"

namespace coxmax {

namespace {
constexpr double kPi = 3.14159265358979323846264338328;
constexpr double kTwoPi = 2.0 * kPi;
}  // namespace

double ShapeComponent::value(double dist) const { return value2(dist * dist); }

double ShapeComponent::value2(double squared_dist) const {
  switch (kind) {
    case ShapeKind::GaussianDensity:
      if (squared_dist > trunc_radius * trunc_radius) return 0.0;
      return amplitude / kTwoPi * std::exp(-0.5 * squared_dist);
    case ShapeKind::DiskIndicator:
      return squared_dist <= radius * radius ? height : 0.0;
  }
  return 0.0;
}

double ShapeComponent::integral() const {
  switch (kind) {
    case ShapeKind::GaussianDensity:
      // Radial mass of the bivariate standard normal inside B_R.
      return amplitude * (1.0 - std::exp(-0.5 * trunc_radius * trunc_radius));
    case ShapeKind::DiskIndicator:
      return height * kPi * radius * radius;
  }
  return 0.0;
}

TruncationConstants truncation_constants(const ShapeComponent& shape, double epsilon,
                                         double alpha_p) {
  if (!(epsilon > 0.0)) throw ParameterError("truncation: epsilon must be > 0");
  if (alpha_p != 0.0) {
    throw ParameterError("truncation: deterministic shapes admit alpha_p = 0 only");
  }
  switch (shape.kind) {
    case ShapeKind::GaussianDensity: {
      const double peak = shape.amplitude / kTwoPi;
      if (epsilon >= peak) {
        throw ParameterError("truncation: epsilon >= sup X, truncation degenerate");
      }
      // Smallest R with amplitude (2 pi)^-1 exp(-R^2/2) = epsilon.
      const double r = std::sqrt(-2.0 * std::log(epsilon / peak));
      return {r, peak};
    }
    case ShapeKind::DiskIndicator:
      if (epsilon >= shape.height) {
        throw ParameterError("truncation: epsilon >= sup X, truncation degenerate");
      }
      return {shape.radius, shape.height};
  }
  throw ParameterError("truncation: unknown shape kind");
}

StormShape::StormShape(std::vector<ShapeComponent> components)
    : components_(std::move(components)) {
  if (components_.empty()) throw ParameterError("storm shape: empty mixture");
  double total = 0.0;
  for (auto& c : components_) {
    if (!(c.weight > 0.0)) throw ParameterError("storm shape: weights must be positive");
    if (!(c.trunc_radius > 0.0) || !(c.bound > 0.0)) {
      throw ParameterError("storm shape: component missing truncation constants");
    }
    total += c.weight;
  }
  cumulative_weight_.reserve(components_.size());
  double acc = 0.0;
  for (auto& c : components_) {
    c.weight /= total;
    acc += c.weight;
    cumulative_weight_.push_back(acc);
    trunc_radius_ = std::max(trunc_radius_, c.trunc_radius);
    bound_ = std::max(bound_, c.bound);
    integral_ += c.weight * c.integral();
  }
  cumulative_weight_.back() = 1.0;
}

StormShape StormShape::gaussian(double epsilon, double amplitude) {
  ShapeComponent c;
  c.kind = ShapeKind::GaussianDensity;
  c.amplitude = amplitude;
  const TruncationConstants tc = truncation_constants(c, epsilon);
  c.trunc_radius = tc.radius;
  c.bound = tc.bound;
  return StormShape({c});
}

StormShape StormShape::disk(double radius, double height) {
  if (!(radius > 0.0) || !(height > 0.0)) {
    throw ParameterError("storm shape: disk radius and height must be positive");
  }
  ShapeComponent c;
  c.kind = ShapeKind::DiskIndicator;
  c.radius = radius;
  c.height = height;
  c.trunc_radius = radius;
  c.bound = height;
  return StormShape({c});
}

StormShape StormShape::mixture(std::vector<ShapeComponent> components) {
  return StormShape(std::move(components));
}

double StormShape::evaluate_mean(double dx, double dy) const {
  const double d2 = dx * dx + dy * dy;
  double sum = 0.0;
  for (const auto& c : components_) sum += c.weight * c.value2(d2);
  return sum;
}

std::size_t StormShape::sample_component(Rng& rng) const {
  if (components_.size() == 1) return 0;
  const double u = rng.uniform();
  for (std::size_t i = 0; i + 1 < cumulative_weight_.size(); ++i) {
    if (u < cumulative_weight_[i]) return i;
  }
  return components_.size() - 1;
}

ScalingConstants scaling_constants(const StormShape& shape, double gaussian_variance,
                                   const IntensityMeanPolicy& policy) {
  const double c_psi = policy.c_psi(gaussian_variance);
  const double mu_y = c_psi * shape.integral();
  return {mu_y, mu_y / c_psi, c_psi};
}

}  // namespace coxmax
