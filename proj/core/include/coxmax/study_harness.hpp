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

#ifndef COXMAX_STUDY_HARNESS_HPP
#define COXMAX_STUDY_HARNESS_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "coxmax/config.hpp"
#include "coxmax/covariance.hpp"
#include "coxmax/extremal_sim.hpp"
#include "coxmax/grid.hpp"
#include "coxmax/pcf_mincontrast.hpp"
#include "coxmax/storm_model.hpp"

namespace coxmax {

struct MetricResult {
  double value = 0.0;
  double se = 0.0;
  std::size_t n_used = 0;
  std::size_t n_failed = 0;
};

// One replicate's relative variance: mean over valid nodes in D of
// (c psi_hat / psi - 1)^2 with 1/c = mean(psi_hat / psi). Scale-invariant by
// construction. mask may be null (all nodes valid). Returns nothing when no
// node is usable.
std::optional<double> relative_variance(const GridField& psi_hat, const GridField* mask,
                                        const GridField& psi_true, const Rect& D);

// Mean and standard error over replicates; NaN entries count as failed.
MetricResult aggregate_mean(const std::vector<double>& per_replicate);

// Mean relative variance over paired replicate lists (no masks).
MetricResult mrv(const std::vector<GridField>& psi_hat,
                 const std::vector<GridField>& psi_true, const Rect& D);

// Empirical mean squared error about `truth`; NaN = failed estimate.
MetricResult mse(const std::vector<double>& estimates, double truth);

struct StudyCell {
  double nu = 1.0;  // +inf allowed
  double sigma2 = 1.0;
  double beta = 1.0;
};

struct StudyConfig {
  std::vector<StudyCell> cells;
  Rect domain{-5.0, 5.0, -5.0, 5.0};
  std::size_t grid_n = 51;  // nodes per side of the observation grid
  std::size_t n_reps = 200;
  double shape_epsilon = 1e-4;
  double kernel_bandwidth = 0.0;       // 0: count rule on the pattern window
  double pcf_bandwidth = 0.0;          // 0: count rule
  double pcf_r0 = 0.0;                 // 0: quarter of the shorter K side
  double contrast_alpha = 1.0;
  double beta_lo = 0.1;
  double beta_hi = 10.0;
  unsigned threads = 0;  // 0 = hardware

  // Desk-scale default: 51^2 grid, 200 replicates, nu in {1, inf},
  // beta in {1, 2}, sigma^2 = 1.
  static StudyConfig desk();
  // Full-scale setting: 101^2 grid, 1000 replicates, the complete
  // {0.5, 1, 2, inf} x {1, 2} x {1, 2} sweep.
  static StudyConfig full();
  static StudyConfig from_config(const Config& config);
};

struct StudyRow {
  std::string cell_id;
  StudyCell cell;
  MetricResult mrv_hat;        // MRV of the extremal-pipeline estimate
  MetricResult mrv_bench;      // MRV of the direct-sample benchmark
  double relative_mrv = 0.0;   // mrv_hat / mrv_bench
  double relative_mrv_se = 0.0;
  MetricResult mse_beta, mse_beta_bench;
  MetricResult mse_sigma2, mse_sigma2_bench;
};

StudyRow run_benchmark_cell(const StudyCell& cell, const StudyConfig& config,
                            std::uint64_t master_seed, std::size_t cell_index);

std::vector<StudyRow> run_study(const StudyConfig& config, std::uint64_t master_seed);

// CSV emission, column layout: cell,nu,beta,sigma2,metric,value,se,n_ok.
void write_nonparametric_table(std::ostream& os, const std::vector<StudyRow>& rows);
void write_parametric_table(std::ostream& os, const std::vector<StudyRow>& rows);

// Config-driven object builders shared with the CLI.
CovarianceModel covariance_from_config(const Config& config);
IntensityMeanPolicy mean_policy_from_config(const Config& config);
StormShape shape_from_config(const Config& config);
Rect domain_from_config(const Config& config);

// Observation grid: grid_n nodes per side spanning the domain.
GridSpec observation_grid(const Rect& domain, std::size_t grid_n);
// Same spacing, extended outward so cells cover the domain inflated by
// `radius` (plus sampling slack).
GridSpec extended_grid(const GridSpec& observation, const Rect& domain, double radius);

}  // namespace coxmax

#endif  // COXMAX_STUDY_HARNESS_HPP
