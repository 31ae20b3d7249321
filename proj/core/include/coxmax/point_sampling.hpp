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

#ifndef COXMAX_POINT_SAMPLING_HPP
#define COXMAX_POINT_SAMPLING_HPP

#include <cstdint>

#include "coxmax/grid.hpp"
#include "coxmax/point_pattern.hpp"
#include "coxmax/rng.hpp"

namespace coxmax {

// Poisson process with a gridded intensity. The intensity is treated as
// piecewise constant per cell: the count is Poisson(sum value*dx*dy over
// cells whose centres lie in the window), each point picks a cell
// proportionally to its mass and lands uniformly in cell-intersect-window.
// This cell discretisation is the single approximation in the otherwise
// exact simulation pipeline.
PointPattern sample_poisson(const GridField& intensity, const Rect& window, Rng& rng);
PointPattern sample_poisson(const GridField& intensity, const Rect& window,
                            std::uint64_t seed);

// Independent thinning: point s survives with probability keep[s], where the
// retention field is interpolated bilinearly at the point location.
PointPattern thin(const PointPattern& pattern, const GridField& keep_probability, Rng& rng);
PointPattern thin(const PointPattern& pattern, const GridField& keep_probability,
                  std::uint64_t seed);

// Turns a sample of CP(f Psi) back into a sample of CP(Psi) on K:
// p-thinning with p = min(1, 1/f) plus an independent Poisson top-up with
// intensity (1-f)_+ psi_hat. f is interpolated at each point; f and psi_hat
// must share one grid. Lemma-style identity: with psi_hat = psi the output is
// distributed as CP(psi) restricted to K.
PointPattern repair_to_base(const PointPattern& pattern_f, const GridField& f,
                            const GridField& psi_hat, const Rect& K, Rng& rng);
PointPattern repair_to_base(const PointPattern& pattern_f, const GridField& f,
                            const GridField& psi_hat, const Rect& K, std::uint64_t seed);

}  // namespace coxmax

#endif  // COXMAX_POINT_SAMPLING_HPP
