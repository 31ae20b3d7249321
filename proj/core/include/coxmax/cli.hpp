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

#ifndef COXMAX_CLI_HPP
#define COXMAX_CLI_HPP

namespace coxmax {

inline constexpr const char* kVersion = "0.1.0";

// Entry point behind the coxmax binary. Subcommands: simulate,
// estimate-intensity, estimate-params, study, mda-check. Returns 0 on
// success, 1 on usage errors, 2 on runtime/numeric failures. All outputs are
// deterministic in (config, seed).
int cli_entry(int argc, const char* const* argv);

}  // namespace coxmax

#endif  // COXMAX_CLI_HPP
