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

#include "coxmax/study_harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>

#include "coxmax/errors.hpp"
#include "coxmax/intensity_estimation.hpp"
#include "coxmax/parallel.hpp"
#include "coxmax/point_sampling.hpp"

namespace coxmax {

namespace {
const double kNaN = std::numeric_limits<double>::quiet_NaN();
}

std::optional<double> relative_variance(const GridField& psi_hat, const GridField* mask,
                                        const GridField& psi_true, const Rect& D) {
  if (!psi_hat.spec.same_as(psi_true.spec)) {
    throw ParameterError("relative_variance: grids differ");
  }
  if (mask && !mask->spec.same_as(psi_hat.spec)) {
    throw ParameterError("relative_variance: mask grid differs");
  }
  const auto& spec = psi_hat.spec;
  // First pass: the global scale c with 1/c = |D|^-1 sum psi_hat/psi.
  double ratio_sum = 0.0;
  std::size_t n_valid = 0;
  for (std::size_t iy = 0; iy < spec.ny; ++iy) {
    const double y = spec.node_y(iy);
    if (y < D.ymin || y > D.ymax) continue;
    for (std::size_t ix = 0; ix < spec.nx; ++ix) {
      const double x = spec.node_x(ix);
      if (x < D.xmin || x > D.xmax) continue;
      const std::size_t i = spec.index(ix, iy);
      if (mask && mask->values[i] == 0.0) continue;
      const double truth = psi_true.values[i];
      if (!(truth > 0.0)) throw ParameterError("relative_variance: psi must be positive");
      ratio_sum += psi_hat.values[i] / truth;
      ++n_valid;
    }
  }
  if (n_valid == 0 || !(ratio_sum > 0.0)) return std::nullopt;
  const double c = static_cast<double>(n_valid) / ratio_sum;
  double acc = 0.0;
  for (std::size_t iy = 0; iy < spec.ny; ++iy) {
    const double y = spec.node_y(iy);
    if (y < D.ymin || y > D.ymax) continue;
    for (std::size_t ix = 0; ix < spec.nx; ++ix) {
      const double x = spec.node_x(ix);
      if (x < D.xmin || x > D.xmax) continue;
      const std::size_t i = spec.index(ix, iy);
      if (mask && mask->values[i] == 0.0) continue;
      const double term = c * psi_hat.values[i] / psi_true.values[i] - 1.0;
      acc += term * term;
    }
  }
  return acc / static_cast<double>(n_valid);
}

MetricResult aggregate_mean(const std::vector<double>& per_replicate) {
  MetricResult out;
  double sum = 0.0;
  for (const double v : per_replicate) {
    if (std::isnan(v)) {
      ++out.n_failed;
      continue;
    }
    sum += v;
    ++out.n_used;
  }
  if (out.n_used == 0) {
    out.value = kNaN;
    out.se = kNaN;
    return out;
  }
  out.value = sum / static_cast<double>(out.n_used);
  double sq = 0.0;
  for (const double v : per_replicate) {
    if (std::isnan(v)) continue;
    sq += (v - out.value) * (v - out.value);
  }
  out.se = out.n_used >= 2 ? std::sqrt(sq / (static_cast<double>(out.n_used) - 1.0) /
                                       static_cast<double>(out.n_used))
                           : 0.0;
  return out;
}

MetricResult mrv(const std::vector<GridField>& psi_hat,
                 const std::vector<GridField>& psi_true, const Rect& D) {
  if (psi_hat.size() != psi_true.size()) {
    throw ParameterError("mrv: replicate lists differ in length");
  }
  std::vector<double> terms;
  terms.reserve(psi_hat.size());
  for (std::size_t i = 0; i < psi_hat.size(); ++i) {
    const auto rv = relative_variance(psi_hat[i], nullptr, psi_true[i], D);
    terms.push_back(rv ? *rv : kNaN);
  }
  return aggregate_mean(terms);
}

MetricResult mse(const std::vector<double>& estimates, double truth) {
  std::vector<double> sq;
  sq.reserve(estimates.size());
  for (const double v : estimates) {
    sq.push_back(std::isnan(v) ? kNaN : (v - truth) * (v - truth));
  }
  return aggregate_mean(sq);
}

StudyConfig StudyConfig::desk() {
  StudyConfig config;
  config.cells = {{1.0, 1.0, 1.0},
                  {1.0, 1.0, 2.0},
                  {kInfSmoothness, 1.0, 1.0},
                  {kInfSmoothness, 1.0, 2.0}};
  return config;
}

StudyConfig StudyConfig::full() {
  StudyConfig config;
  config.grid_n = 101;
  config.n_reps = 1000;
  config.cells.clear();
  for (const double nu : {0.5, 1.0, 2.0, kInfSmoothness}) {
    for (const double sigma2 : {1.0, 2.0}) {
      for (const double beta : {1.0, 2.0}) {
        config.cells.push_back({nu, sigma2, beta});
      }
    }
  }
  return config;
}

StudyConfig StudyConfig::from_config(const Config& config) {
  StudyConfig sc = config.get_bool_or("study.full", false) ? full() : desk();
  sc.domain = domain_from_config(config);
  sc.grid_n = static_cast<std::size_t>(config.get_int_or("grid.n", static_cast<long long>(sc.grid_n)));
  sc.n_reps = static_cast<std::size_t>(config.get_int_or("study.reps", static_cast<long long>(sc.n_reps)));
  sc.shape_epsilon = config.get_double_or("shape.epsilon", sc.shape_epsilon);
  sc.kernel_bandwidth = config.get_double_or("kernel.h", 0.0);
  sc.pcf_bandwidth = config.get_double_or("pcf.h", 0.0);
  sc.pcf_r0 = config.get_double_or("pcf.r0", 0.0);
  sc.contrast_alpha = config.get_double_or("contrast.alpha", 1.0);
  sc.beta_lo = config.get_double_or("contrast.beta_lo", sc.beta_lo);
  sc.beta_hi = config.get_double_or("contrast.beta_hi", sc.beta_hi);
  sc.threads = static_cast<unsigned>(config.get_int_or("threads", 0));
  const auto nus = config.get_list_or("study.nu", {});
  const auto sigmas = config.get_list_or("study.sigma2", {});
  const auto betas = config.get_list_or("study.beta", {});
  if (!nus.empty() || !sigmas.empty() || !betas.empty()) {
    const auto or_default = [](std::vector<double> v, std::vector<double> d) {
      return v.empty() ? d : v;
    };
    sc.cells.clear();
    for (const double nu : or_default(nus, {1.0}))
      for (const double s2 : or_default(sigmas, {1.0}))
        for (const double beta : or_default(betas, {1.0})) sc.cells.push_back({nu, s2, beta});
  }
  return sc;
}

GridSpec observation_grid(const Rect& domain, std::size_t grid_n) {
  if (grid_n < 2) throw ParameterError("observation_grid: need at least 2 nodes per side");
  GridSpec spec;
  spec.nx = grid_n;
  spec.ny = grid_n;
  spec.x0 = domain.xmin;
  spec.y0 = domain.ymin;
  spec.dx = domain.width() / static_cast<double>(grid_n - 1);
  spec.dy = domain.height() / static_cast<double>(grid_n - 1);
  spec.validate();
  return spec;
}

GridSpec extended_grid(const GridSpec& observation, const Rect& domain, double radius) {
  const double pad = radius + std::hypot(observation.dx, observation.dy);
  const auto mx = static_cast<std::size_t>(std::ceil(pad / observation.dx));
  const auto my = static_cast<std::size_t>(std::ceil(pad / observation.dy));
  GridSpec spec = observation;
  spec.x0 = observation.x0 - static_cast<double>(mx) * observation.dx;
  spec.y0 = observation.y0 - static_cast<double>(my) * observation.dy;
  spec.nx = observation.nx + 2 * mx;
  spec.ny = observation.ny + 2 * my;
  (void)domain;
  spec.validate();
  return spec;
}

namespace {

struct ReplicateOutcome {
  double rv_hat = kNaN;
  double rv_bench = kNaN;
  double beta_hat = kNaN;
  double sigma2_hat = kNaN;
  double beta_bench = kNaN;
  double sigma2_bench = kNaN;
};

std::string format_cell_id(std::size_t index) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "c%02zu", index);
  return buf;
}

// Pair-correlation + minimum-contrast stage for one replicate pattern.
// Leaves the outputs NaN when the pattern is too sparse or the contrast
// degenerates (A <= 0); the caller counts those as failures.
void estimate_parameters(const PointPattern& pattern, const Rect& K,
                         const CovarianceModel& family, const StudyConfig& config,
                         double r0, double& beta_out, double& sigma2_out) {
  if (pattern.points.size() < 5) return;
  const double lambda_hat = static_cast<double>(pattern.points.size()) / K.area();
  double h = config.pcf_bandwidth > 0.0 ? config.pcf_bandwidth
                                        : 0.5 / std::sqrt(lambda_hat);
  h = std::clamp(h, r0 / 20.0, r0 / 2.0);
  const double dr = r0 / 80.0;
  const std::vector<double> radii = radii_grid(dr, r0, dr);
  ContrastConfig contrast;
  contrast.epsilon = h;
  contrast.r0 = r0;
  contrast.alpha = config.contrast_alpha;
  contrast.beta_lo = config.beta_lo;
  contrast.beta_hi = config.beta_hi;
  if (!(contrast.r0 > contrast.epsilon)) return;
  const PCFEstimate pcf = estimate_pcf(pattern, K, radii, h);
  const MinContrastResult result = minimum_contrast(pcf, family, contrast);
  if (result.ok) {
    beta_out = result.beta_hat;
    sigma2_out = result.sigma2_hat;
  }
}

std::string format_nu(double nu) {
  if (std::isinf(nu)) return "inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", nu);
  return buf;
}

void write_metric_row(std::ostream& os, const StudyRow& row, const char* metric,
                      double value, double se, std::size_t n_ok) {
  char buf[256];
  std::snprintf(buf, sizeof buf, "%s,%s,%g,%g,%s,%.10g,%.10g,%zu\n", row.cell_id.c_str(),
                format_nu(row.cell.nu).c_str(), row.cell.beta, row.cell.sigma2, metric,
                value, se, n_ok);
  os << buf;
}

}  // namespace

StudyRow run_benchmark_cell(const StudyCell& cell, const StudyConfig& config,
                            std::uint64_t master_seed, std::size_t cell_index) {
  const CovarianceModel model =
      CovarianceModel::matern(cell.sigma2, cell.beta, cell.nu);
  const IntensityMeanPolicy policy = IntensityMeanPolicy::unit();
  const StormShape shape = StormShape::gaussian(config.shape_epsilon);
  const ScalingConstants sc = scaling_constants(shape, model.variance, policy);
  const double radius = shape.trunc_radius();

  const Rect K = config.domain.deflate(radius);
  if (!(K.width() > 0.0) || !(K.height() > 0.0)) {
    throw ParameterError("study: storm radius leaves an empty closing K");
  }
  const GridSpec obs_grid = observation_grid(config.domain, config.grid_n);
  const GridSpec psi_grid = extended_grid(obs_grid, config.domain, radius);
  const GridSpec eval_grid = subgrid_in(obs_grid, K);
  const Rect eval_region = K;

  const GaussianFieldSampler sampler(model, psi_grid);

  const double r0 =
      config.pcf_r0 > 0.0 ? config.pcf_r0 : 0.25 * std::min(K.width(), K.height());

  std::vector<ReplicateOutcome> outcomes(config.n_reps);
  const std::uint64_t cell_seed = derive_seed(master_seed, cell_index);

  parallel_for(
      config.n_reps,
      [&](std::size_t rep) {
        ReplicateOutcome& out = outcomes[rep];
        const std::uint64_t rep_seed = derive_seed(cell_seed, rep);
        Rng psi_rng(derive_seed(rep_seed, 1));
        const GridField psi = sampler.draw_log_gaussian(policy, psi_rng);
        const GridField psi_eval = extract_subgrid(psi, eval_grid);

        // Extremal pipeline: simulate, extract centres, correct, estimate.
        const SimulationResult sim =
            simulate_extremal(psi, shape, sc.mu_y, config.domain, derive_seed(rep_seed, 2));
        const PointPattern centres = extract_contributing(sim, K);
        if (!centres.points.empty()) {
          const CorrectionField correction =
              correcting_factor(sim.field, K, shape, sc.mu_y, eval_grid);
          KernelConfig kernel_config;
          kernel_config.bandwidth =
              config.kernel_bandwidth > 0.0
                  ? config.kernel_bandwidth
                  : default_bandwidth(centres.window.area(), centres.points.size());
          const KernelEstimate density =
              kernel_intensity(centres, eval_region, eval_grid, kernel_config);
          const CorrectedIntensity corrected =
              corrected_intensity(density.field, correction, kernel_config);
          const auto rv =
              relative_variance(corrected.psi_hat, &corrected.mask, psi_eval, eval_region);
          if (rv) out.rv_hat = *rv;

          // Parametric stage on the repaired pattern.
          const PointPattern repaired = repair_to_base(
              centres, correction.b, corrected.psi_hat, K, derive_seed(rep_seed, 3));
          estimate_parameters(repaired, K, model, config, r0, out.beta_hat,
                              out.sigma2_hat);
        }

        // Benchmark pipeline: direct Cox sample with the same psi.
        const PointPattern direct =
            sample_poisson(psi, eval_region, derive_seed(rep_seed, 4));
        if (!direct.points.empty()) {
          KernelConfig kernel_config;
          kernel_config.bandwidth =
              config.kernel_bandwidth > 0.0
                  ? config.kernel_bandwidth
                  : default_bandwidth(eval_region.area(), direct.points.size());
          const KernelEstimate density =
              kernel_intensity(direct, eval_region, eval_grid, kernel_config);
          const auto rv = relative_variance(density.field, nullptr, psi_eval, eval_region);
          if (rv) out.rv_bench = *rv;
          estimate_parameters(direct, K, model, config, r0, out.beta_bench,
                              out.sigma2_bench);
        }
      },
      config.threads);

  StudyRow row;
  row.cell_id = format_cell_id(cell_index);
  row.cell = cell;
  std::vector<double> rv_hat, rv_bench, beta_hat, sigma2_hat, beta_bench, sigma2_bench;
  for (const auto& out : outcomes) {
    rv_hat.push_back(out.rv_hat);
    rv_bench.push_back(out.rv_bench);
    beta_hat.push_back(out.beta_hat);
    sigma2_hat.push_back(out.sigma2_hat);
    beta_bench.push_back(out.beta_bench);
    sigma2_bench.push_back(out.sigma2_bench);
  }
  row.mrv_hat = aggregate_mean(rv_hat);
  row.mrv_bench = aggregate_mean(rv_bench);
  row.relative_mrv = row.mrv_hat.value / row.mrv_bench.value;
  if (row.mrv_hat.value > 0.0 && row.mrv_bench.value > 0.0) {
    const double ra = row.mrv_hat.se / row.mrv_hat.value;
    const double rb = row.mrv_bench.se / row.mrv_bench.value;
    row.relative_mrv_se = row.relative_mrv * std::sqrt(ra * ra + rb * rb);
  }
  row.mse_beta = mse(beta_hat, cell.beta);
  row.mse_beta_bench = mse(beta_bench, cell.beta);
  row.mse_sigma2 = mse(sigma2_hat, cell.sigma2);
  row.mse_sigma2_bench = mse(sigma2_bench, cell.sigma2);
  return row;
}

std::vector<StudyRow> run_study(const StudyConfig& config, std::uint64_t master_seed) {
  std::vector<StudyRow> rows;
  rows.reserve(config.cells.size());
  for (std::size_t i = 0; i < config.cells.size(); ++i) {
    rows.push_back(run_benchmark_cell(config.cells[i], config, master_seed, i));
  }
  return rows;
}

void write_nonparametric_table(std::ostream& os, const std::vector<StudyRow>& rows) {
  os << "cell,nu,beta,sigma2,metric,value,se,n_ok\n";
  for (const auto& row : rows) {
    write_metric_row(os, row, "MRV_psi_hat", row.mrv_hat.value, row.mrv_hat.se,
                     row.mrv_hat.n_used);
    write_metric_row(os, row, "MRV_psi0_hat", row.mrv_bench.value, row.mrv_bench.se,
                     row.mrv_bench.n_used);
    write_metric_row(os, row, "relative_MRV", row.relative_mrv, row.relative_mrv_se,
                     std::min(row.mrv_hat.n_used, row.mrv_bench.n_used));
  }
}

void write_parametric_table(std::ostream& os, const std::vector<StudyRow>& rows) {
  os << "cell,nu,beta,sigma2,metric,value,se,n_ok\n";
  for (const auto& row : rows) {
    write_metric_row(os, row, "MSE_beta_hat", row.mse_beta.value, row.mse_beta.se,
                     row.mse_beta.n_used);
    write_metric_row(os, row, "MSE_beta0_hat", row.mse_beta_bench.value,
                     row.mse_beta_bench.se, row.mse_beta_bench.n_used);
    write_metric_row(os, row, "MSE_sigma2_hat", row.mse_sigma2.value, row.mse_sigma2.se,
                     row.mse_sigma2.n_used);
    write_metric_row(os, row, "MSE_sigma20_hat", row.mse_sigma2_bench.value,
                     row.mse_sigma2_bench.se, row.mse_sigma2_bench.n_used);
  }
}

CovarianceModel covariance_from_config(const Config& config) {
  std::map<std::string, std::string> entries;
  entries["family"] = config.get_or("family", "whittle_matern");
  entries["variance"] = config.get_or("variance", "1");
  entries["scale"] = config.get_or("scale", "1");
  if (config.has("nu")) entries["nu"] = config.get("nu");
  if (config.has("alpha")) entries["alpha"] = config.get("alpha");
  if (entries["family"] == "whittle_matern" || entries["family"] == "matern") {
    if (!entries.count("nu")) entries["nu"] = "1";
  }
  return covariance_from_entries(entries);
}

IntensityMeanPolicy mean_policy_from_config(const Config& config) {
  const std::string mode = config.get_or("mean.policy", "unit");
  if (mode == "unit") return IntensityMeanPolicy::unit();
  if (mode == "explicit") {
    return IntensityMeanPolicy::explicit_mean(config.get_double("mean.value"));
  }
  throw IoError("config: mean.policy must be 'unit' or 'explicit'");
}

StormShape shape_from_config(const Config& config) {
  const std::string kind = config.get_or("shape.kind", "gaussian");
  if (kind == "gaussian") {
    return StormShape::gaussian(config.get_double_or("shape.epsilon", 1e-4),
                                config.get_double_or("shape.amplitude", 1.0));
  }
  if (kind == "disk") {
    return StormShape::disk(config.get_double("shape.radius"),
                            config.get_double("shape.height"));
  }
  if (kind == "mixture") {
    const auto n = config.get_int_or("shape.components", 0);
    if (n < 1) throw IoError("config: shape.components must be >= 1 for mixtures");
    std::vector<ShapeComponent> components;
    for (long long i = 0; i < n; ++i) {
      const std::string prefix = "shape.c" + std::to_string(i) + ".";
      ShapeComponent c;
      c.weight = config.get_double_or(prefix + "weight", 1.0);
      const std::string ckind = config.get_or(prefix + "kind", "gaussian");
      if (ckind == "gaussian") {
        c.kind = ShapeKind::GaussianDensity;
        c.amplitude = config.get_double_or(prefix + "amplitude", 1.0);
        const TruncationConstants tc =
            truncation_constants(c, config.get_double_or(prefix + "epsilon", 1e-4));
        c.trunc_radius = tc.radius;
        c.bound = tc.bound;
      } else if (ckind == "disk") {
        c.kind = ShapeKind::DiskIndicator;
        c.radius = config.get_double(prefix + "radius");
        c.height = config.get_double(prefix + "height");
        c.trunc_radius = c.radius;
        c.bound = c.height;
      } else {
        throw IoError("config: unknown mixture component kind '" + ckind + "'");
      }
      components.push_back(c);
    }
    return StormShape::mixture(std::move(components));
  }
  throw IoError("config: shape.kind must be gaussian, disk or mixture");
}

Rect domain_from_config(const Config& config) {
  Rect domain{-5.0, 5.0, -5.0, 5.0};
  domain.xmin = config.get_double_or("domain.xmin", domain.xmin);
  domain.xmax = config.get_double_or("domain.xmax", domain.xmax);
  domain.ymin = config.get_double_or("domain.ymin", domain.ymin);
  domain.ymax = config.get_double_or("domain.ymax", domain.ymax);
  if (!(domain.xmax > domain.xmin) || !(domain.ymax > domain.ymin)) {
    throw IoError("config: empty domain");
  }
  return domain;
}

}  // namespace coxmax
