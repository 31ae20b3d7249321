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

#ifndef COXMAX_RNG_HPP
#define COXMAX_RNG_HPP

#include <cmath>
#include <cstdint>
#include <random>

#include "coxmax/errors.hpp"

namespace coxmax {

// One splitmix64 scrambling step.
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Derives an independent stream seed from (base, salt). Chain calls to mix in
// further indices; the replicate-parallel code paths all seed through here.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t salt) {
  return mix64(mix64(base) ^ mix64(salt + 0x632be59bd9b4e019ULL));
}

// Deterministic random source. The engine is std::mt19937_64 (its output
// sequence is pinned by the standard); all variate transforms are explicit
// here so that streams are reproducible bit-for-bit for a fixed seed.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform on [0, 1), 53-bit resolution.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  // Uniform on (0, 1].
  double uniform_pos() {
    return (static_cast<double>(engine_() >> 11) + 1.0) * 0x1.0p-53;
  }

  double uniform(double a, double b) { return a + (b - a) * uniform(); }

  // Standard normal, Box-Muller; the sine partner is cached.
  double normal() {
    if (have_cached_) {
      have_cached_ = false;
      return cached_;
    }
    const double r = std::sqrt(-2.0 * std::log(uniform_pos()));
    const double theta = 6.283185307179586476925286766559 * uniform();
    cached_ = r * std::sin(theta);
    have_cached_ = true;
    return r * std::cos(theta);
  }

  // Standard exponential.
  double exponential() { return -std::log(uniform_pos()); }

  // Poisson count. Knuth product-of-uniforms below 10, Hormann's transformed
  // rejection (PTRS) above. Exact for all supported rates.
  long long poisson(double lambda) {
    if (!(lambda >= 0.0)) throw ParameterError("poisson: rate must be >= 0");
    if (lambda == 0.0) return 0;
    if (lambda > 1e8) throw ParameterError("poisson: rate above supported range 1e8");
    if (lambda < 10.0) {
      const double limit = std::exp(-lambda);
      long long k = 0;
      double prod = uniform_pos();
      while (prod > limit) {
        ++k;
        prod *= uniform_pos();
      }
      return k;
    }
    const double slam = std::sqrt(lambda);
    const double loglam = std::log(lambda);
    const double b = 0.931 + 2.53 * slam;
    const double a = -0.059 + 0.02483 * b;
    const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
    const double v_r = 0.9277 - 3.6224 / (b - 2.0);
    for (;;) {
      const double u = uniform() - 0.5;
      const double v = uniform_pos();
      const double us = 0.5 - std::abs(u);
      const double kf = std::floor((2.0 * a / us + b) * u + lambda + 0.43);
      if (us >= 0.07 && v <= v_r) return static_cast<long long>(kf);
      if (kf < 0.0 || (us < 0.013 && v > us)) continue;
      if (std::log(v * inv_alpha / (a / (us * us) + b)) <=
          kf * loglam - lambda - std::lgamma(kf + 1.0)) {
        return static_cast<long long>(kf);
      }
    }
  }

 private:
  std::mt19937_64 engine_;
  bool have_cached_ = false;
  double cached_ = 0.0;
};

}  // namespace coxmax

#endif  // COXMAX_RNG_HPP
