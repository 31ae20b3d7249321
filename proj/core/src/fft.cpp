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

#include "coxmax/fft.hpp"

#include <cmath>

#include "coxmax/errors.hpp"

namespace coxmax {
namespace {

constexpr double kTwoPi = 6.28318530717958647692528676656;

bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

// Twiddle table w[k] = exp(-2 pi i k / n), k < n/2.
std::vector<std::complex<double>> twiddles(std::size_t n) {
  std::vector<std::complex<double>> w(n / 2);
  for (std::size_t k = 0; k < n / 2; ++k) {
    const double a = -kTwoPi * static_cast<double>(k) / static_cast<double>(n);
    w[k] = {std::cos(a), std::sin(a)};
  }
  return w;
}

void fft_core(std::complex<double>* a, std::size_t n,
              const std::vector<std::complex<double>>& w, bool inverse) {
  // Bit-reversal permutation.
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const std::size_t half = len >> 1;
    const std::size_t stride = n / len;
    for (std::size_t i = 0; i < n; i += len) {
      for (std::size_t k = 0; k < half; ++k) {
        std::complex<double> tw = w[k * stride];
        if (inverse) tw = std::conj(tw);
        const std::complex<double> u = a[i + k];
        const std::complex<double> v = a[i + k + half] * tw;
        a[i + k] = u + v;
        a[i + k + half] = u - v;
      }
    }
  }
  if (inverse) {
    const double inv_n = 1.0 / static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) a[i] *= inv_n;
  }
}

}  // namespace

std::size_t next_pow2(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

void fft_pow2(std::complex<double>* data, std::size_t n, bool inverse) {
  if (!is_pow2(n)) throw ParameterError("fft: length must be a power of two");
  if (n == 1) return;
  fft_core(data, n, twiddles(n), inverse);
}

void fft2_pow2(std::vector<std::complex<double>>& data, std::size_t nx, std::size_t ny,
               bool inverse) {
  if (!is_pow2(nx) || !is_pow2(ny)) throw ParameterError("fft2: dims must be powers of two");
  if (data.size() != nx * ny) throw ParameterError("fft2: size mismatch");
  const auto wx = twiddles(nx);
  for (std::size_t row = 0; row < ny; ++row) {
    if (nx > 1) fft_core(data.data() + row * nx, nx, wx, inverse);
  }
  if (ny == 1) return;
  const auto wy = twiddles(ny);
  std::vector<std::complex<double>> col(ny);
  for (std::size_t ix = 0; ix < nx; ++ix) {
    for (std::size_t iy = 0; iy < ny; ++iy) col[iy] = data[iy * nx + ix];
    fft_core(col.data(), ny, wy, inverse);
    for (std::size_t iy = 0; iy < ny; ++iy) data[iy * nx + ix] = col[iy];
  }
}

}  // namespace coxmax
