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

#include "coxmax/gaussian_field.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "coxmax/errors.hpp"
#include "coxmax/fft.hpp"

namespace coxmax {

struct GaussianFieldSampler::Impl {
  // Cholesky path
  Eigen::MatrixXd chol_lower;

  // Embedding path: sqrt(lambda / (M N)) over the torus, row-major M-fast.
  std::vector<double> spectrum_sqrt;
  std::size_t torus_nx = 0;
  std::size_t torus_ny = 0;
};

namespace {

constexpr int kMaxPaddingDoublings = 3;  // up to 8x the minimal torus
constexpr double kEigenvalueTolerance = 1e-9;

void build_cholesky(const CovarianceModel& model, const GridSpec& grid,
                    GaussianFieldSampler::Impl& impl, EmbeddingReport& report) {
  const std::size_t n = grid.size();
  Eigen::MatrixXd cov(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    const double xj = grid.node_x(j % grid.nx);
    const double yj = grid.node_y(j / grid.nx);
    for (std::size_t i = j; i < n; ++i) {
      const double xi = grid.node_x(i % grid.nx);
      const double yi = grid.node_y(i / grid.nx);
      const double c = model.evaluate(std::hypot(xi - xj, yi - yj));
      cov(i, j) = c;
      cov(j, i) = c;
    }
  }
  Eigen::LLT<Eigen::MatrixXd> llt(cov);
  if (llt.info() != Eigen::Success) {
    // One shot of diagonal jitter, then hard failure.
    cov.diagonal().array() += 1e-10 * model.variance;
    llt.compute(cov);
    report.cholesky_jitter = true;
    if (llt.info() != Eigen::Success) {
      throw EmbeddingError("gaussian: covariance matrix is not positive definite");
    }
  }
  impl.chol_lower = llt.matrixL();
}

bool try_embedding(const CovarianceModel& model, const GridSpec& grid, std::size_t tx,
                   std::size_t ty, GaussianFieldSampler::Impl& impl,
                   EmbeddingReport& report) {
  std::vector<std::complex<double>> base(tx * ty);
  for (std::size_t q = 0; q < ty; ++q) {
    const double hy = static_cast<double>(std::min(q, ty - q)) * grid.dy;
    for (std::size_t p = 0; p < tx; ++p) {
      const double hx = static_cast<double>(std::min(p, tx - p)) * grid.dx;
      base[q * tx + p] = model.evaluate(std::hypot(hx, hy));
    }
  }
  fft2_pow2(base, tx, ty, /*inverse=*/false);
  double max_eig = 0.0;
  double min_eig = 0.0;
  for (const auto& v : base) {
    max_eig = std::max(max_eig, v.real());
    min_eig = std::min(min_eig, v.real());
  }
  if (min_eig < -kEigenvalueTolerance * max_eig) {
    report.most_negative = min_eig / max_eig;
    return false;
  }
  impl.spectrum_sqrt.resize(tx * ty);
  const double norm = 1.0 / static_cast<double>(tx * ty);
  int clamped = 0;
  for (std::size_t i = 0; i < base.size(); ++i) {
    double lambda = base[i].real();
    if (lambda < 0.0) {
      lambda = 0.0;
      ++clamped;
    }
    impl.spectrum_sqrt[i] = std::sqrt(lambda * norm);
  }
  impl.torus_nx = tx;
  impl.torus_ny = ty;
  report.torus_nx = tx;
  report.torus_ny = ty;
  report.clamped_eigenvalues = clamped;
  report.most_negative = max_eig > 0.0 ? min_eig / max_eig : 0.0;
  return true;
}

void build_embedding(const CovarianceModel& model, const GridSpec& grid,
                     GaussianFieldSampler::Impl& impl, EmbeddingReport& report) {
  const std::size_t base_tx = next_pow2(2 * grid.nx);
  const std::size_t base_ty = next_pow2(2 * grid.ny);
  for (int doublings = 0; doublings <= kMaxPaddingDoublings; ++doublings) {
    const std::size_t tx = base_tx << doublings;
    const std::size_t ty = base_ty << doublings;
    report.padding_factor = 1 << doublings;
    if (try_embedding(model, grid, tx, ty, impl, report)) return;
  }
  const auto entries = covariance_to_entries(model);
  std::string label;
  for (const auto& [key, value] : entries) label += " " + key + "=" + value;
  throw EmbeddingError("gaussian: circulant embedding not positive semi-definite after "
                       "8x padding for model" +
                       label);
}

}  // namespace

GaussianFieldSampler::GaussianFieldSampler(const CovarianceModel& model,
                                           const GridSpec& grid, GaussianBackend backend)
    : model_(model), grid_(grid), backend_(backend), impl_(new Impl) {
  model_.validate();
  grid_.validate();
  if (backend_ == GaussianBackend::Auto) {
    backend_ = grid_.size() <= kCholeskyLimit ? GaussianBackend::Cholesky
                                              : GaussianBackend::CirculantEmbedding;
  }
  if (backend_ == GaussianBackend::Cholesky) {
    if (grid_.size() > kCholeskyLimit) {
      throw SizeError("gaussian: Cholesky backend limited to " +
                      std::to_string(kCholeskyLimit) + " grid points");
    }
    build_cholesky(model_, grid_, *impl_, report_);
  } else {
    build_embedding(model_, grid_, *impl_, report_);
  }
}

GaussianFieldSampler::~GaussianFieldSampler() = default;
GaussianFieldSampler::GaussianFieldSampler(GaussianFieldSampler&&) noexcept = default;
GaussianFieldSampler& GaussianFieldSampler::operator=(GaussianFieldSampler&&) noexcept =
    default;

GridField GaussianFieldSampler::draw(double mean, Rng& rng) const {
  GridField field(grid_);
  if (backend_ == GaussianBackend::Cholesky) {
    const std::size_t n = grid_.size();
    Eigen::VectorXd z(n);
    for (std::size_t i = 0; i < n; ++i) z[i] = rng.normal();
    Eigen::VectorXd w = impl_->chol_lower * z;
    for (std::size_t i = 0; i < n; ++i) field.values[i] = mean + w[i];
    return field;
  }
  const std::size_t tx = impl_->torus_nx;
  const std::size_t ty = impl_->torus_ny;
  std::vector<std::complex<double>> a(tx * ty);
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double re = rng.normal();
    const double im = rng.normal();
    a[i] = {impl_->spectrum_sqrt[i] * re, impl_->spectrum_sqrt[i] * im};
  }
  fft2_pow2(a, tx, ty, /*inverse=*/false);
  for (std::size_t iy = 0; iy < grid_.ny; ++iy) {
    for (std::size_t ix = 0; ix < grid_.nx; ++ix) {
      field.at(ix, iy) = mean + a[iy * tx + ix].real();
    }
  }
  return field;
}

GridField GaussianFieldSampler::draw_log_gaussian(const IntensityMeanPolicy& policy,
                                                  Rng& rng) const {
  GridField field = draw(policy.gaussian_mean(model_.variance), rng);
  for (auto& v : field.values) v = std::exp(v);
  return field;
}

GridField simulate_gaussian(const CovarianceModel& model, const GridSpec& spec, double mean,
                            std::uint64_t seed, GaussianBackend backend,
                            EmbeddingReport* report) {
  GaussianFieldSampler sampler(model, spec, backend);
  if (report) *report = sampler.report();
  Rng rng(seed);
  return sampler.draw(mean, rng);
}

GridField simulate_log_gaussian(const CovarianceModel& model, const GridSpec& spec,
                                const IntensityMeanPolicy& policy, std::uint64_t seed,
                                GaussianBackend backend) {
  GaussianFieldSampler sampler(model, spec, backend);
  Rng rng(seed);
  return sampler.draw_log_gaussian(policy, rng);
}

}  // namespace coxmax
