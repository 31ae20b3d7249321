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

#include "coxmax/pcf_mincontrast.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "coxmax/errors.hpp"

namespace coxmax {

namespace {

constexpr double kPi = 3.14159265358979323846264338328;
constexpr double kTwoPi = 2.0 * kPi;
constexpr int kAngularSamples = 4096;

// Unit circle direction table shared by every edge-correction quadrature.
const std::vector<Point>& circle_table() {
  static const std::vector<Point> table = [] {
    std::vector<Point> t(kAngularSamples);
    for (int k = 0; k < kAngularSamples; ++k) {
      const double a = kTwoPi * (static_cast<double>(k) + 0.5) / kAngularSamples;
      t[static_cast<std::size_t>(k)] = {std::cos(a), std::sin(a)};
    }
    return t;
  }();
  return table;
}

// Fraction of the circle of radius d around (cx, cy) lying inside K, by
// deterministic angular quadrature.
double inside_fraction(double cx, double cy, double d, const Rect& K) {
  const auto& table = circle_table();
  int inside = 0;
  for (const auto& dir : table) {
    const double x = cx + d * dir.x;
    if (x < K.xmin || x > K.xmax) continue;
    const double y = cy + d * dir.y;
    if (y < K.ymin || y > K.ymax) continue;
    ++inside;
  }
  return static_cast<double>(inside) / kAngularSamples;
}

double epanechnikov1(double u, double h) {
  const double t = u / h;
  if (std::abs(t) >= 1.0) return 0.0;
  return 0.75 / h * (1.0 - t * t);
}

// Coarse-grid bracketing plus golden-section maximisation, deterministic,
// ties toward smaller argument.
double maximise(const std::function<double(double)>& f, double lo, double hi, double tol) {
  constexpr int kCoarse = 64;
  double best_x = lo;
  double best_v = f(lo);
  for (int i = 1; i <= kCoarse; ++i) {
    const double x = lo + (hi - lo) * static_cast<double>(i) / kCoarse;
    const double v = f(x);
    if (v > best_v) {
      best_v = v;
      best_x = x;
    }
  }
  const double step = (hi - lo) / kCoarse;
  double a = std::max(lo, best_x - step);
  double b = std::min(hi, best_x + step);
  const double invphi = 0.6180339887498949;
  // Three refinement rounds of golden-section around the running optimum.
  for (int round = 0; round < 3; ++round) {
    double x1 = b - invphi * (b - a);
    double x2 = a + invphi * (b - a);
    double f1 = f(x1);
    double f2 = f(x2);
    while (b - a > tol) {
      if (f1 >= f2) {  // ties toward the left bracket (smaller beta)
        b = x2;
        x2 = x1;
        f2 = f1;
        x1 = b - invphi * (b - a);
        f1 = f(x1);
      } else {
        a = x1;
        x1 = x2;
        f1 = f2;
        x2 = a + invphi * (b - a);
        f2 = f(x2);
      }
    }
    best_x = f1 >= f2 ? x1 : x2;
    const double span = std::max(tol * 8.0, (b - a) * 4.0);
    a = std::max(lo, best_x - span);
    b = std::min(hi, best_x + span);
  }
  return best_x;
}

}  // namespace

std::vector<double> radii_grid(double start, double stop, double step) {
  if (!(start > 0.0) || !(step > 0.0) || stop < start) {
    throw ParameterError("radii_grid: need 0 < start <= stop and step > 0");
  }
  std::vector<double> r;
  for (int i = 0;; ++i) {
    const double v = start + step * i;
    if (v > stop * (1.0 + 1e-12)) break;
    r.push_back(v);
  }
  return r;
}

PCFEstimate estimate_pcf(const PointPattern& pattern, const Rect& K,
                         const std::vector<double>& radii, double bandwidth) {
  if (pattern.points.size() < 2) {
    throw ParameterError("estimate_pcf: need at least two points");
  }
  if (!(bandwidth > 0.0)) throw ParameterError("estimate_pcf: bandwidth must be positive");
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (!(radii[i] > 0.0)) throw ParameterError("estimate_pcf: radii must be positive");
    if (i && radii[i] <= radii[i - 1]) {
      throw ParameterError("estimate_pcf: radii must be strictly increasing");
    }
  }

  PCFEstimate out;
  out.radii = radii;
  out.values.assign(radii.size(), 0.0);
  out.bandwidth = bandwidth;
  out.window = K;
  out.n_points = pattern.points.size();

  const double r_max = radii.back() + bandwidth;
  const double r_min = std::max(0.0, radii.front() - bandwidth);

  // Bucket points on a coarse grid so only nearby pairs are visited.
  const double cell = std::max(r_max, 1e-12);
  const int ncx = std::max(1, static_cast<int>(std::floor(K.width() / cell)) + 1);
  const int ncy = std::max(1, static_cast<int>(std::floor(K.height() / cell)) + 1);
  std::vector<std::vector<std::size_t>> buckets(
      static_cast<std::size_t>(ncx) * static_cast<std::size_t>(ncy));
  const auto bucket_of = [&](const Point& p) {
    int bx = static_cast<int>((p.x - K.xmin) / cell);
    int by = static_cast<int>((p.y - K.ymin) / cell);
    bx = std::clamp(bx, 0, ncx - 1);
    by = std::clamp(by, 0, ncy - 1);
    return static_cast<std::size_t>(by) * ncx + static_cast<std::size_t>(bx);
  };
  for (std::size_t i = 0; i < pattern.points.size(); ++i) {
    buckets[bucket_of(pattern.points[i])].push_back(i);
  }

  const auto first_radius_ge = [&](double v) {
    return static_cast<std::size_t>(
        std::lower_bound(radii.begin(), radii.end(), v) - radii.begin());
  };

  for (std::size_t i = 0; i < pattern.points.size(); ++i) {
    const Point& pi = pattern.points[i];
    const int bx = std::clamp(static_cast<int>((pi.x - K.xmin) / cell), 0, ncx - 1);
    const int by = std::clamp(static_cast<int>((pi.y - K.ymin) / cell), 0, ncy - 1);
    // Distance from s_i to the boundary; circles smaller than this never exit
    // the window and so carry weight exactly 1.
    const double edge_dist =
        std::min(std::min(pi.x - K.xmin, K.xmax - pi.x), std::min(pi.y - K.ymin, K.ymax - pi.y));
    for (int cy = std::max(0, by - 1); cy <= std::min(ncy - 1, by + 1); ++cy) {
      for (int cx = std::max(0, bx - 1); cx <= std::min(ncx - 1, bx + 1); ++cx) {
        for (const std::size_t j : buckets[static_cast<std::size_t>(cy) * ncx + cx]) {
          if (j == i) continue;
          const Point& pj = pattern.points[j];
          const double d = std::hypot(pj.x - pi.x, pj.y - pi.y);
          if (d <= r_min || d >= r_max) continue;
          double weight = 1.0;
          if (d > edge_dist) {
            const double fraction = inside_fraction(pi.x, pi.y, d, K);
            if (fraction <= 0.0) {
              ++out.pairs_dropped;
              continue;
            }
            weight = 1.0 / fraction;  // 2 pi / gamma_ij
          }
          ++out.pairs_used;
          // Only radii within the kernel bandwidth of d receive mass.
          for (std::size_t k = first_radius_ge(d - bandwidth); k < radii.size(); ++k) {
            if (radii[k] >= d + bandwidth) break;
            out.values[k] += epanechnikov1(radii[k] - d, bandwidth) * weight;
          }
        }
      }
    }
  }

  const double n = static_cast<double>(out.n_points);
  const double norm = K.area() / (kTwoPi * n * n);
  for (std::size_t k = 0; k < radii.size(); ++k) {
    out.values[k] *= norm / radii[k];
  }
  return out;
}

double lgcp_pcf(const CovarianceModel& model, double r) {
  return std::exp(model.evaluate(r));
}

MinContrastResult minimum_contrast(const PCFEstimate& pcf, const CovarianceModel& family,
                                   const ContrastConfig& config) {
  MinContrastResult result;
  result.pairs_used = pcf.pairs_used;
  if (!(config.epsilon >= 0.0) || !(config.r0 > config.epsilon)) {
    throw ParameterError("minimum_contrast: need 0 <= epsilon < r0");
  }
  if (!(config.alpha > 0.0)) throw ParameterError("minimum_contrast: alpha must be > 0");
  if (!(config.beta_lo > 0.0) || !(config.beta_hi > config.beta_lo)) {
    throw ParameterError("minimum_contrast: invalid scale bracket");
  }

  // Integration grid: the estimate's radii inside [eps, r0] with g_hat > 0.
  std::vector<double> r, log_g;
  for (std::size_t k = 0; k < pcf.radii.size(); ++k) {
    const double radius = pcf.radii[k];
    if (radius < config.epsilon || radius > config.r0) continue;
    if (!(pcf.values[k] > 0.0)) continue;
    r.push_back(radius);
    log_g.push_back(std::log(pcf.values[k]));
  }
  if (r.size() < 3) {
    result.failure = "fewer than 3 usable radii in [epsilon, r0]";
    return result;
  }

  // Signed power keeps alpha != 1 usable with negative log g_hat.
  const auto signed_pow = [&](double v) {
    if (config.alpha == 1.0) return v;
    return v < 0.0 ? -std::pow(-v, config.alpha) : std::pow(v, config.alpha);
  };
  const auto trapezoid = [&](const std::vector<double>& f) {
    double acc = 0.0;
    for (std::size_t k = 0; k + 1 < f.size(); ++k) {
      acc += 0.5 * (f[k] + f[k + 1]) * (r[k + 1] - r[k]);
    }
    return acc;
  };
  std::vector<double> fa(r.size()), fb(r.size());
  const auto ab = [&](double beta) {
    const CovarianceModel model = family.with_scale(beta);
    for (std::size_t k = 0; k < r.size(); ++k) {
      const double c = model.correlation(r[k]);
      fa[k] = signed_pow(log_g[k] * c);
      fb[k] = config.alpha == 1.0 ? c * c : std::pow(c, 2.0 * config.alpha);
    }
    return std::pair<double, double>{trapezoid(fa), trapezoid(fb)};
  };

  const auto objective = [&](double beta) {
    const auto [a, b] = ab(beta);
    if (!(b > 0.0)) return -1e300;
    return a * a / b;
  };
  const double beta_hat =
      maximise(objective, config.beta_lo, config.beta_hi, config.search_tol);
  const auto [a, b] = ab(beta_hat);
  result.beta_hat = beta_hat;
  if (!(a > 0.0) || !(b > 0.0)) {
    result.failure = "A(beta_hat) <= 0, sigma^2 undefined";
    return result;
  }
  result.sigma2_hat = std::pow(a / b, 1.0 / config.alpha);

  // Contrast value at the estimate.
  const CovarianceModel model = family.with_scale(beta_hat);
  std::vector<double> diff(r.size());
  for (std::size_t k = 0; k < r.size(); ++k) {
    const double t = signed_pow(result.sigma2_hat * model.correlation(r[k]));
    const double t_hat = signed_pow(log_g[k]);
    diff[k] = (t - t_hat) * (t - t_hat);
  }
  result.contrast = trapezoid(diff);
  result.ok = true;
  return result;
}

}  // namespace coxmax
