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

#ifndef COXMAX_FFT_HPP
#define COXMAX_FFT_HPP

#include <complex>
#include <cstddef>
#include <vector>

namespace coxmax {

// Iterative radix-2 complex FFT; n must be a power of two. Forward transform
// uses exp(-2 pi i j k / n) and is unnormalised; the inverse divides by n.
// Deterministic: identical input bits give identical output bits.
void fft_pow2(std::complex<double>* data, std::size_t n, bool inverse);

// 2D transform over an nx-by-ny row-major array (both powers of two).
void fft2_pow2(std::vector<std::complex<double>>& data, std::size_t nx, std::size_t ny,
               bool inverse);

std::size_t next_pow2(std::size_t n);

}  // namespace coxmax

#endif  // COXMAX_FFT_HPP
