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

#ifndef COXMAX_GAUSSIAN_FIELD_HPP
#define COXMAX_GAUSSIAN_FIELD_HPP

#include <complex>
#include <cstdint>
#include <memory>
#include <vector>

#include "coxmax/covariance.hpp"
#include "coxmax/grid.hpp"
#include "coxmax/rng.hpp"

namespace coxmax {

enum class GaussianBackend {
  Auto,                // Cholesky up to kCholeskyLimit points, embedding beyond
  Cholesky,            // dense factorisation, exact
  CirculantEmbedding,  // block-circulant torus embedding + FFT
};

inline constexpr std::size_t kCholeskyLimit = 4096;

// Mean convention for the log-Gaussian intensity Psi = exp(W). UnitMean sets
// E W = -sigma^2/2 so that c_Psi = E Psi(o) = 1.
struct IntensityMeanPolicy {
  enum class Mode { UnitMean, ExplicitMean };
  Mode mode = Mode::UnitMean;
  double mean = 0.0;

  static IntensityMeanPolicy unit() { return {}; }
  static IntensityMeanPolicy explicit_mean(double m) {
    return {Mode::ExplicitMean, m};
  }
  double gaussian_mean(double variance) const {
    return mode == Mode::UnitMean ? -0.5 * variance : mean;
  }
  // c_Psi = E exp(W(o)) for the resulting log-Gaussian field.
  double c_psi(double variance) const {
    return mode == Mode::UnitMean ? 1.0 : std::exp(mean + 0.5 * variance);
  }
};

struct EmbeddingReport {
  std::size_t torus_nx = 0;
  std::size_t torus_ny = 0;
  int padding_factor = 1;        // doublings applied beyond the minimal torus
  int clamped_eigenvalues = 0;   // negatives in [-1e-9 max, 0) set to zero
  double most_negative = 0.0;    // before clamping, relative to max eigenvalue
  bool cholesky_jitter = false;  // diagonal jitter was needed
};

// Precomputes the factorisation (Cholesky factor or embedding spectrum) once;
// draws then reuse it. A single sampler draw is single-threaded; independent
// draws with independent Rng streams may run concurrently on one const
// sampler.
class GaussianFieldSampler {
 public:
  GaussianFieldSampler(const CovarianceModel& model, const GridSpec& grid,
                       GaussianBackend backend = GaussianBackend::Auto);
  ~GaussianFieldSampler();
  GaussianFieldSampler(GaussianFieldSampler&&) noexcept;
  GaussianFieldSampler& operator=(GaussianFieldSampler&&) noexcept;

  // One realization of W with the given mean. Normals are consumed from rng
  // in node order (Cholesky) or torus order (embedding).
  GridField draw(double mean, Rng& rng) const;

  GridField draw_log_gaussian(const IntensityMeanPolicy& policy, Rng& rng) const;

  GaussianBackend backend() const { return backend_; }
  const EmbeddingReport& report() const { return report_; }
  const GridSpec& grid() const { return grid_; }
  const CovarianceModel& model() const { return model_; }

 private:
  struct Impl;
  CovarianceModel model_;
  GridSpec grid_;
  GaussianBackend backend_;
  EmbeddingReport report_;
  std::unique_ptr<Impl> impl_;
};

// One-shot conveniences; deterministic in (model, spec, mean, seed).
GridField simulate_gaussian(const CovarianceModel& model, const GridSpec& spec, double mean,
                            std::uint64_t seed,
                            GaussianBackend backend = GaussianBackend::Auto,
                            EmbeddingReport* report = nullptr);

GridField simulate_log_gaussian(const CovarianceModel& model, const GridSpec& spec,
                                const IntensityMeanPolicy& policy, std::uint64_t seed,
                                GaussianBackend backend = GaussianBackend::Auto);

}  // namespace coxmax

#endif  // COXMAX_GAUSSIAN_FIELD_HPP
