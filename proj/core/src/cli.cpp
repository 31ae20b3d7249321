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

#include "coxmax/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "coxmax/config.hpp"
#include "coxmax/errors.hpp"
#include "coxmax/extremal_sim.hpp"
#include "coxmax/gaussian_field.hpp"
#include "coxmax/grid.hpp"
#include "coxmax/intensity_estimation.hpp"
#include "coxmax/pcf_mincontrast.hpp"
#include "coxmax/point_pattern.hpp"
#include "coxmax/study_harness.hpp"

namespace coxmax {
namespace {

namespace fs = std::filesystem;

struct CommonArgs {
  std::string config_path;
  std::string out_dir = ".";
  std::uint64_t seed = 1;
};

void add_common(CLI::App* cmd, CommonArgs& args, bool config_required = true) {
  auto* opt = cmd->add_option("--config", args.config_path, "key = value config file");
  if (config_required) opt->required();
  cmd->add_option("--seed", args.seed, "master seed");
  cmd->add_option("--out", args.out_dir, "output directory");
}

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_metadata(const fs::path& dir, const char* command, const Config& config,
                    std::uint64_t seed, const std::vector<std::pair<std::string, std::string>>& extras) {
  std::ofstream os(dir / "metadata.txt");
  if (!os) throw IoError("cannot write metadata in " + dir.string());
  char hash[32];
  std::snprintf(hash, sizeof hash, "%016llx",
                static_cast<unsigned long long>(config.content_hash()));
  os << "tool = coxmax " << kVersion << "\n";
  os << "command = " << command << "\n";
  os << "config_hash = " << hash << "\n";
  os << "seed = " << seed << "\n";
  for (const auto& [key, value] : extras) os << key << " = " << value << "\n";
}

void ensure_out_dir(const CommonArgs& args) {
  fs::create_directories(args.out_dir);
}

void write_events_csv(const fs::path& path, const SimulationResult& sim) {
  std::ofstream os(path);
  if (!os) throw IoError("cannot write " + path.string());
  os << "i,sx,sy,u,contributes\n";
  char buf[160];
  for (std::size_t i = 0; i < sim.events.size(); ++i) {
    const auto& e = sim.events[i];
    std::snprintf(buf, sizeof buf, "%zu,%.17g,%.17g,%.17g,%d\n", i + 1, e.sx, e.sy,
                  e.level, e.contributes ? 1 : 0);
    os << buf;
  }
}

PointPattern events_csv_to_pattern(const std::string& path, bool contributing_only,
                                   const Rect& window) {
  std::ifstream is(path);
  if (!is) throw IoError("cannot open " + path);
  std::string line;
  if (!std::getline(is, line)) throw IoError("events csv: empty file " + path);
  PointPattern pattern;
  pattern.window = window;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    double sx = 0.0, sy = 0.0, level = 0.0;
    long long index = 0;
    int contributes = 0;
    if (std::sscanf(line.c_str(), "%lld,%lf,%lf,%lf,%d", &index, &sx, &sy, &level,
                    &contributes) != 5) {
      throw IoError("events csv: malformed line '" + line + "'");
    }
    if (contributing_only && contributes == 0) continue;
    pattern.points.push_back({sx, sy});
  }
  return pattern;
}

// One-sample Kolmogorov distance against a cdf.
template <typename Cdf>
double ks_distance(std::vector<double> samples, Cdf&& cdf) {
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  double d = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double f = cdf(samples[i]);
    d = std::max(d, std::abs(f - static_cast<double>(i) / n));
    d = std::max(d, std::abs(static_cast<double>(i + 1) / n - f));
  }
  return d;
}

int run_simulate(const CommonArgs& args) {
  const Config config = Config::from_file(args.config_path);
  ensure_out_dir(args);
  const CovarianceModel model = covariance_from_config(config);
  const IntensityMeanPolicy policy = mean_policy_from_config(config);
  const StormShape shape = shape_from_config(config);
  const Rect domain = domain_from_config(config);
  const auto grid_n = static_cast<std::size_t>(config.get_int_or("grid.n", 101));
  const GridSpec obs_grid = observation_grid(domain, grid_n);
  const GridSpec psi_grid = extended_grid(obs_grid, domain, shape.trunc_radius());
  const ScalingConstants sc = scaling_constants(shape, model.variance, policy);

  GridField psi;
  const std::string intensity = config.get_or("intensity", "lgcp");
  if (intensity == "unit") {
    psi = constant_field(psi_grid, 1.0);
  } else if (intensity == "lgcp") {
    psi = simulate_log_gaussian(model, psi_grid, policy, derive_seed(args.seed, 1));
  } else {
    throw IoError("config: intensity must be 'lgcp' or 'unit'");
  }
  const double mu = intensity == "unit" ? sc.mu_z : sc.mu_y;
  const SimulationResult sim =
      simulate_extremal(psi, shape, mu, domain, derive_seed(args.seed, 2));

  const fs::path out(args.out_dir);
  write_gf1_file((out / "psi.gf1").string(), psi);
  write_gf1_file((out / "y.gf1").string(), sim.field);
  write_events_csv(out / "events.csv", sim);
  write_metadata(out, "simulate", config, args.seed,
                 {{"c_psi", fmt17(sc.c_psi)},
                  {"mu_y", fmt17(mu)},
                  {"nu_psi", fmt17(sim.nu_psi)},
                  {"stopping_index", std::to_string(sim.stopping_index)},
                  {"storm_radius", fmt17(shape.trunc_radius())}});
  return 0;
}

int run_estimate_intensity(const CommonArgs& args, const std::string& y_path,
                           const std::string& events_path) {
  const Config config = Config::from_file(args.config_path);
  ensure_out_dir(args);
  const GridField y = read_gf1_file(y_path);
  const CovarianceModel model = covariance_from_config(config);
  const IntensityMeanPolicy policy = mean_policy_from_config(config);
  const StormShape shape = shape_from_config(config);
  const ScalingConstants sc = scaling_constants(shape, model.variance, policy);
  const double radius = shape.trunc_radius();

  const Rect observed = y.spec.node_extent();
  const Rect K = observed.deflate(radius);
  if (!(K.width() > 0.0) || !(K.height() > 0.0)) {
    throw ParameterError("estimate-intensity: observation window too small for K");
  }
  KernelConfig kernel_config;
  kernel_config.stability_radius = config.get_double_or("kernel.rtilde", 0.0);
  kernel_config.b_floor = config.get_double_or("kernel.b_floor", 1e-8);
  const std::string edge = config.get_or("kernel.edge", "ripley");
  kernel_config.edge = edge == "none" ? EdgeCorrection::None : EdgeCorrection::Ripley;

  double r_tilde = kernel_config.stability_radius;
  if (r_tilde <= 0.0) r_tilde = std::min(radius, std::sqrt(2.0 * std::log(100.0)));
  const Rect eval_region = K.inflate(r_tilde).intersection(observed);
  const GridSpec eval_grid = subgrid_in(y.spec, eval_region);

  const PointPattern pattern =
      events_csv_to_pattern(events_path, /*contributing_only=*/true, K.inflate(radius));
  kernel_config.bandwidth = config.get_double_or("kernel.h", 0.0);
  if (kernel_config.bandwidth <= 0.0) {
    if (pattern.points.empty()) {
      throw ParameterError("estimate-intensity: empty pattern and no kernel.h");
    }
    kernel_config.bandwidth =
        default_bandwidth(pattern.window.area(), pattern.points.size());
  }

  const CorrectionField correction =
      correcting_factor(y, K, shape, sc.mu_y, eval_grid);
  const KernelEstimate density =
      kernel_intensity(pattern, eval_region, eval_grid, kernel_config);
  const CorrectedIntensity corrected =
      corrected_intensity(density.field, correction, kernel_config);

  const fs::path out(args.out_dir);
  write_gf1_file((out / "b.gf1").string(), correction.b);
  write_gf1_file((out / "psihat_y.gf1").string(), density.field);
  write_gf1_file((out / "psihat.gf1").string(), corrected.psi_hat);
  write_gf1_file((out / "psihat_mask.gf1").string(), corrected.mask);
  write_metadata(out, "estimate-intensity", config, args.seed,
                 {{"mu_y", fmt17(sc.mu_y)},
                  {"bandwidth", fmt17(kernel_config.bandwidth)},
                  {"bandwidth_warning", density.bandwidth_warning ? "1" : "0"},
                  {"points_used", std::to_string(density.points_used)},
                  {"masked_nodes", std::to_string(corrected.masked_count)},
                  {"stability_radius", fmt17(r_tilde)}});
  return 0;
}

int run_estimate_params(const CommonArgs& args, const std::string& pattern_path) {
  const Config config = Config::from_file(args.config_path);
  ensure_out_dir(args);
  const PointPattern pattern = read_pp1_file(pattern_path);
  const CovarianceModel family = covariance_from_config(config);
  const Rect K = pattern.window;

  const double shorter = std::min(K.width(), K.height());
  const double r0 = config.get_double_or("pcf.r0", 0.25 * shorter);
  double h = config.get_double_or("pcf.h", 0.0);
  if (h <= 0.0) {
    if (pattern.points.size() < 2) throw ParameterError("estimate-params: empty pattern");
    h = 0.5 / std::sqrt(static_cast<double>(pattern.points.size()) / K.area());
    h = std::clamp(h, r0 / 20.0, r0 / 2.0);
  }
  const double dr = config.get_double_or("pcf.dr", r0 / 80.0);
  const std::vector<double> radii = radii_grid(dr, r0, dr);
  const PCFEstimate pcf = estimate_pcf(pattern, K, radii, h);

  ContrastConfig contrast;
  contrast.epsilon = config.get_double_or("contrast.epsilon", h);
  contrast.r0 = r0;
  contrast.alpha = config.get_double_or("contrast.alpha", 1.0);
  contrast.beta_lo = config.get_double_or("contrast.beta_lo", 0.1);
  contrast.beta_hi = config.get_double_or("contrast.beta_hi", 10.0);
  const MinContrastResult result = minimum_contrast(pcf, family, contrast);

  const fs::path out(args.out_dir);
  {
    std::ofstream os(out / "pcf.csv");
    if (!os) throw IoError("cannot write pcf.csv");
    os << "r,ghat\n";
    for (std::size_t i = 0; i < pcf.radii.size(); ++i) {
      os << fmt17(pcf.radii[i]) << "," << fmt17(pcf.values[i]) << "\n";
    }
  }
  {
    std::ofstream os(out / "params.json");
    if (!os) throw IoError("cannot write params.json");
    os << "{\n";
    os << "  \"ok\": " << (result.ok ? "true" : "false") << ",\n";
    os << "  \"sigma2_hat\": " << fmt17(result.sigma2_hat) << ",\n";
    os << "  \"beta_hat\": " << fmt17(result.beta_hat) << ",\n";
    os << "  \"contrast\": " << fmt17(result.contrast) << ",\n";
    os << "  \"n_used_pairs\": " << result.pairs_used << "\n";
    os << "}\n";
  }
  write_metadata(out, "estimate-params", config, args.seed,
                 {{"bandwidth", fmt17(h)},
                  {"r0", fmt17(r0)},
                  {"failure", result.failure.empty() ? "none" : result.failure}});
  return 0;
}

int run_study(const CommonArgs& args) {
  const Config config = Config::from_file(args.config_path);
  ensure_out_dir(args);
  const StudyConfig study_config = StudyConfig::from_config(config);
  const std::vector<StudyRow> rows = run_study(study_config, args.seed);
  const fs::path out(args.out_dir);
  {
    std::ofstream os(out / "table_nonparametric.csv");
    if (!os) throw IoError("cannot write table_nonparametric.csv");
    write_nonparametric_table(os, rows);
  }
  {
    std::ofstream os(out / "table_parametric.csv");
    if (!os) throw IoError("cannot write table_parametric.csv");
    write_parametric_table(os, rows);
  }
  write_metadata(out, "study", config, args.seed,
                 {{"cells", std::to_string(rows.size())},
                  {"replicates", std::to_string(study_config.n_reps)},
                  {"grid_n", std::to_string(study_config.grid_n)}});
  return 0;
}

int run_mda_check(const CommonArgs& args, int blocks) {
  const Config config = Config::from_file(args.config_path);
  ensure_out_dir(args);
  const CovarianceModel model = covariance_from_config(config);
  const IntensityMeanPolicy policy = mean_policy_from_config(config);
  const StormShape shape = shape_from_config(config);
  const Rect domain = domain_from_config(config);
  const auto grid_n = static_cast<std::size_t>(config.get_int_or("grid.n", 33));
  const auto reps = static_cast<std::size_t>(config.get_int_or("mda.reps", 200));
  const GridSpec obs_grid = observation_grid(domain, grid_n);
  const GridSpec psi_grid = extended_grid(obs_grid, domain, shape.trunc_radius());
  const GaussianFieldSampler sampler(model, psi_grid);

  MdaSetup setup;
  setup.sampler = &sampler;
  setup.policy = policy;
  setup.shape = &shape;
  setup.domain = domain;

  // Probe sites: centre plus the four half-way diagonal nodes.
  const GridSpec sub = subgrid_in(psi_grid, domain);
  const std::vector<std::pair<std::size_t, std::size_t>> probes = {
      {sub.nx / 2, sub.ny / 2},
      {sub.nx / 4, sub.ny / 4},
      {3 * sub.nx / 4, sub.ny / 4},
      {sub.nx / 4, 3 * sub.ny / 4},
      {3 * sub.nx / 4, 3 * sub.ny / 4}};

  std::vector<std::vector<double>> samples(probes.size());
  for (std::size_t rep = 0; rep < reps; ++rep) {
    const GridField block_max =
        block_maxima_mda(setup, blocks, derive_seed(args.seed, rep));
    for (std::size_t p = 0; p < probes.size(); ++p) {
      samples[p].push_back(block_max.at(probes[p].first, probes[p].second));
    }
  }

  const fs::path out(args.out_dir);
  std::ofstream os(out / "mda_ks.csv");
  if (!os) throw IoError("cannot write mda_ks.csv");
  os << "site_x,site_y,n_blocks,n_reps,ks_distance\n";
  const auto frechet = [](double z) { return z > 0.0 ? std::exp(-1.0 / z) : 0.0; };
  for (std::size_t p = 0; p < probes.size(); ++p) {
    const double d = ks_distance(samples[p], frechet);
    char buf[160];
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%d,%zu,%.17g\n",
                  sub.node_x(probes[p].first), sub.node_y(probes[p].second), blocks, reps,
                  d);
    os << buf;
  }
  os.close();
  write_metadata(out, "mda-check", config, args.seed,
                 {{"blocks", std::to_string(blocks)}, {"reps", std::to_string(reps)}});
  return 0;
}

}  // namespace

int cli_entry(int argc, const char* const* argv) {
  CLI::App app{"coxmax: simulation and inference for Cox extremal random fields"};
  app.require_subcommand(1);

  CommonArgs sim_args;
  auto* simulate = app.add_subcommand("simulate", "simulate psi and the extremal field Y");
  add_common(simulate, sim_args);

  CommonArgs est_args;
  std::string y_path, events_path;
  auto* estimate =
      app.add_subcommand("estimate-intensity", "kernel estimate of psi from storm centres");
  add_common(estimate, est_args);
  estimate->add_option("--y", y_path, "observed field, GF1")->required();
  estimate->add_option("--events", events_path, "storm events csv")->required();

  CommonArgs params_args;
  std::string pattern_path;
  auto* params = app.add_subcommand(
      "estimate-params", "pair correlation + minimum contrast from a point pattern");
  add_common(params, params_args);
  params->add_option("--pattern", pattern_path, "point pattern, PP1")->required();

  CommonArgs study_args;
  auto* study = app.add_subcommand("study", "replicated benchmark study, CSV tables");
  add_common(study, study_args);

  CommonArgs mda_args;
  int blocks = 50;
  auto* mda = app.add_subcommand("mda-check", "block-maxima convergence diagnostics");
  add_common(mda, mda_args);
  mda->add_option("--blocks", blocks, "block count n")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (simulate->parsed()) return run_simulate(sim_args);
    if (estimate->parsed()) return run_estimate_intensity(est_args, y_path, events_path);
    if (params->parsed()) return run_estimate_params(params_args, pattern_path);
    if (study->parsed()) return run_study(study_args);
    if (mda->parsed()) return run_mda_check(mda_args, blocks);
  } catch (const std::exception& e) {
    std::cerr << "coxmax: " << e.what() << "\n";
    return 2;
  }
  return 1;
}

}  // namespace coxmax
