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

#include "coxmax/bessel.hpp"

#include <cmath>
#include <limits>

#include "coxmax/errors.hpp"

// The fractional-order evaluation follows the classical scheme for K_nu:
// Temme's series at small argument, a Steed continued fraction at large
// argument, then the three-term recurrence upward in the order. Orders
// >= 128 switch to the uniform large-order (Debye) expansion in log space.

namespace coxmax {
namespace {

constexpr double kPi = 3.14159265358979323846264338328;
constexpr double kEps = 1e-16;
constexpr int kMaxIter = 20000;

// Taylor coefficients of 1/Gamma: 1/Gamma(1+mu) = sum_j kInvGammaCoef[j] mu^j.
constexpr double kInvGammaCoef[26] = {
    1.0000000000000000e+00,  5.7721566490153286e-01,  -6.5587807152025388e-01,
    -4.2002635034095236e-02, 1.6653861138229149e-01,  -4.2197734555544337e-02,
    -9.6219715278769736e-03, 7.2189432466630995e-03,  -1.1651675918590651e-03,
    -2.1524167411495098e-04, 1.2805028238811619e-04,  -2.0134854780788239e-05,
    -1.2504934821426707e-06, 1.1330272319816959e-06,  -2.0563384169776071e-07,
    6.1160951044814158e-09,  5.0020076444692229e-09,  -1.1812745704870201e-09,
    1.0434267116911005e-10,  7.7822634399050712e-12,  -3.6968056186422057e-12,
    5.1003702874544760e-13,  -2.0583260535665068e-14, -5.3481225394230180e-15,
    1.2267786282382608e-15,  -1.1812593016974976e-16};

// 1/Gamma(1+mu), |mu| <= 0.5.
double inv_gamma1p(double mu) {
  double sum = 0.0;
  double p = 1.0;
  for (double c : kInvGammaCoef) {
    sum += c * p;
    p *= mu;
  }
  return sum;
}

// (1/Gamma(1-mu) - 1/Gamma(1+mu)) / (2 mu); only odd-index coefficients
// survive, so there is no cancellation as mu -> 0.
double temme_gam1(double mu) {
  const double mu2 = mu * mu;
  double sum = 0.0;
  double p = 1.0;
  for (int k = 1; k < 26; k += 2) {
    sum += kInvGammaCoef[k] * p;
    p *= mu2;
  }
  return -sum;
}

// (1/Gamma(1-mu) + 1/Gamma(1+mu)) / 2.
double temme_gam2(double mu) {
  const double mu2 = mu * mu;
  double sum = 0.0;
  double p = 1.0;
  for (int k = 0; k < 26; k += 2) {
    sum += kInvGammaCoef[k] * p;
    p *= mu2;
  }
  return sum;
}

// (K_mu, K_{mu+1}) pair, each equal to slot * exp(log_scale + (scaled ? -x : 0)).
struct KPair {
  double k0;
  double k1;
  double log_scale;
};

// Temme's series, |mu| <= 0.5, 0 < x <= 2. Unscaled K values.
KPair temme_series(double mu, double x) {
  const double x2 = 0.5 * x;
  const double pimu = kPi * mu;
  const double fact = std::abs(pimu) < 1e-30 ? 1.0 : pimu / std::sin(pimu);
  double d = -std::log(x2);
  double e = mu * d;
  const double fact2 = std::abs(e) < 1e-30 ? 1.0 : std::sinh(e) / e;
  const double gam1 = temme_gam1(mu);
  const double gam2 = temme_gam2(mu);
  const double gampl = inv_gamma1p(mu);
  const double gammi = inv_gamma1p(-mu);
  double ff = fact * (gam1 * std::cosh(e) + gam2 * fact2 * d);
  double sum = ff;
  e = std::exp(e);
  double p = 0.5 * e / gampl;
  double q = 0.5 / (e * gammi);
  double c = 1.0;
  d = x2 * x2;
  double sum1 = p;
  for (int i = 1; i <= kMaxIter; ++i) {
    ff = (i * ff + p + q) / (i * i - mu * mu);
    c *= d / i;
    p /= (i - mu);
    q /= (i + mu);
    const double del = c * ff;
    sum += del;
    sum1 += c * (p - i * ff);
    if (std::abs(del) < std::abs(sum) * kEps) break;
  }
  return {sum, sum1 * (2.0 / x), 0.0};
}

// Steed continued fraction, x > 2. Returns exp(x) K_mu and exp(x) K_{mu+1}.
KPair steed_cf2(double mu, double x) {
  const double a1 = 0.25 - mu * mu;
  double b = 2.0 * (1.0 + x);
  double d = 1.0 / b;
  double h = d;
  double delh = d;
  double q1 = 0.0;
  double q2 = 1.0;
  double a = -a1;
  double q = a1;
  double c = a1;
  double s = 1.0 + q * delh;
  for (int i = 2; i <= kMaxIter; ++i) {
    a -= 2 * (i - 1);
    c = -a * c / i;
    const double qnew = (q1 - b * q2) / a;
    q1 = q2;
    q2 = qnew;
    q += c * qnew;
    b += 2.0;
    d = 1.0 / (b + a * d);
    delh = (b * d - 1.0) * delh;
    h += delh;
    const double dels = q * delh;
    s += dels;
    if (std::abs(dels / s) < kEps) break;
  }
  h = a1 * h;
  const double k0 = std::sqrt(kPi / (2.0 * x)) / s;
  const double k1 = k0 * (mu + x + 0.5 - h) / x;
  return {k0, k1, 0.0};
}

// K_{order+1} = K_{order-1} + (2 order / x) K_order, `steps` times upward.
// Afterwards k0 holds K_{mu+steps}. Renormalises to dodge overflow.
KPair recur_up(KPair kp, double mu, double x, int steps) {
  constexpr double kBig = 1e270;
  constexpr double kLogBig = 621.7402746060946;  // log(1e270)
  for (int i = 0; i < steps; ++i) {
    const double next = kp.k0 + (2.0 * (mu + i + 1.0) / x) * kp.k1;
    kp.k0 = kp.k1;
    kp.k1 = next;
    if (kp.k1 > kBig) {
      kp.k0 /= kBig;
      kp.k1 /= kBig;
      kp.log_scale += kLogBig;
    }
  }
  return kp;
}

bool is_half_integer(double nu) {
  const double two_nu = 2.0 * nu;
  return std::abs(two_nu - std::round(two_nu)) < 1e-13 &&
         std::abs(nu - std::round(nu)) > 0.25;
}

// K_nu as {value = k0, log_scale}, so that K_nu = k0 * exp(log_scale).
KPair knu_core(double nu, double x) {
  if (is_half_integer(nu)) {
    // exp(x) K_{1/2} = sqrt(pi/(2x)); recurrence is finite and exact.
    const double k_half = std::sqrt(kPi / (2.0 * x));
    KPair kp{k_half, k_half * (1.0 + 1.0 / x), -x};
    const int m = static_cast<int>(std::round(nu - 0.5));
    return recur_up(kp, 0.5, x, m);
  }
  const int nl = static_cast<int>(nu + 0.5);
  const double mu = nu - nl;
  KPair kp = x <= 2.0 ? temme_series(mu, x) : steed_cf2(mu, x);
  if (x > 2.0) kp.log_scale -= x;
  return recur_up(kp, mu, x, nl);
}

// Uniform large-order expansion of log K_nu(x), relative error O(nu^-5).
double log_k_uniform(double nu, double x) {
  const double z = x / nu;
  const double r = std::sqrt(1.0 + z * z);
  const double eta = r + std::log(z / (1.0 + r));
  const double t = 1.0 / r;
  const double t2 = t * t;
  const double u1 = t * (3.0 - 5.0 * t2) / 24.0;
  const double u2 = t2 * (81.0 + t2 * (-462.0 + t2 * 385.0)) / 1152.0;
  const double u3 =
      t * t2 * (30375.0 + t2 * (-369603.0 + t2 * (765765.0 - t2 * 425425.0))) / 414720.0;
  const double u4 = t2 * t2 *
                    (4465125.0 +
                     t2 * (-94121676.0 +
                           t2 * (349922430.0 + t2 * (-446185740.0 + t2 * 185910725.0)))) /
                    39813120.0;
  const double series = 1.0 - u1 / nu + u2 / (nu * nu) - u3 / (nu * nu * nu) +
                        u4 / (nu * nu * nu * nu);
  return 0.5 * std::log(kPi / (2.0 * nu)) - nu * eta - 0.25 * std::log1p(z * z) +
         std::log(series);
}

void check_args(double nu, double x) {
  if (!(nu >= 0.0) || !std::isfinite(nu)) throw ParameterError("bessel_k: order must be >= 0");
  if (!(x > 0.0)) throw ParameterError("bessel_k: argument must be > 0");
}

double from_log(double log_value) {
  if (log_value > 709.0) return std::numeric_limits<double>::infinity();
  if (log_value < -745.0) return 0.0;
  return std::exp(log_value);
}

}  // namespace

double log_bessel_k(double nu, double x) {
  check_args(nu, x);
  if (nu >= 128.0) return log_k_uniform(nu, x);
  const KPair kp = knu_core(nu, x);
  return std::log(kp.k0) + kp.log_scale;
}

double bessel_k(double nu, double x) {
  check_args(nu, x);
  if (nu >= 128.0) return from_log(log_k_uniform(nu, x));
  const KPair kp = knu_core(nu, x);
  if (kp.log_scale == 0.0) return kp.k0;
  if (std::abs(kp.log_scale) < 600.0) return kp.k0 * std::exp(kp.log_scale);
  return from_log(std::log(kp.k0) + kp.log_scale);
}

double bessel_k_scaled(double nu, double x) {
  check_args(nu, x);
  if (nu >= 128.0) return from_log(log_k_uniform(nu, x) + x);
  const KPair kp = knu_core(nu, x);
  const double log_scale = kp.log_scale + x;
  if (log_scale == 0.0) return kp.k0;
  if (std::abs(log_scale) < 600.0) return kp.k0 * std::exp(log_scale);
  return from_log(std::log(kp.k0) + log_scale);
}

}  // namespace coxmax
