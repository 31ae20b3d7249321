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

#ifndef COXMAX_ERRORS_HPP
#define COXMAX_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace coxmax {

struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Invalid parameter values (sigma^2 <= 0, negative intensities, ...).
struct ParameterError : Error {
  using Error::Error;
};

// Grid larger than the configured point budget, or grids that do not cover
// a required region.
struct SizeError : Error {
  using Error::Error;
};

// Circulant embedding stayed indefinite after the maximum padding.
struct EmbeddingError : Error {
  using Error::Error;
};

// Storm generation exceeded the configured event cap.
struct RunawayError : Error {
  using Error::Error;
};

// Malformed files or configs.
struct IoError : Error {
  using Error::Error;
};

}  // namespace coxmax

#endif  // COXMAX_ERRORS_HPP
