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

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "support/stats.hpp"
#include "coxmax/rng.hpp"

using coxmax::Rng;

TEST_SUITE_BEGIN("rng");

TEST_CASE("streams are deterministic and seed-sensitive") {
  Rng a(42), b(42), c(43);
  bool all_equal = true;
  bool any_diff = false;
  for (int i = 0; i < 1000; ++i) {
    const double va = a.uniform();
    all_equal = all_equal && va == b.uniform();
    any_diff = any_diff || va != c.uniform();
  }
  CHECK(all_equal);
  CHECK(any_diff);
}

TEST_CASE("derived seeds separate streams") {
  const auto s1 = coxmax::derive_seed(7, 0);
  const auto s2 = coxmax::derive_seed(7, 1);
  CHECK(s1 != s2);
  CHECK(coxmax::derive_seed(8, 0) != s1);
}

TEST_CASE("normal moments") {
  Rng rng(1234);
  std::vector<double> z(200000);
  for (auto& v : z) v = rng.normal();
  CHECK(std::abs(teststats::mean(z)) < 0.01);
  CHECK(teststats::variance(z) == doctest::Approx(1.0).epsilon(0.02));
  const auto ks = teststats::ks_test(z, [](double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); });
  CHECK(ks.p_value > 0.001);
}

TEST_CASE("exponential distribution") {
  Rng rng(99);
  std::vector<double> e(100000);
  for (auto& v : e) v = rng.exponential();
  const auto ks = teststats::ks_test(e, [](double x) { return 1.0 - std::exp(-x); });
  CHECK(ks.p_value > 0.001);
}

TEST_CASE("poisson small and large rate against the pmf") {
  for (const double lambda : {4.0, 40.0}) {
    Rng rng(2024);
    const int reps = 200000;
    std::vector<long long> draws(reps);
    long long max_draw = 0;
    for (auto& d : draws) {
      d = rng.poisson(lambda);
      max_draw = std::max(max_draw, d);
    }
    // Bin counts with expected >= 5, tail pooled.
    std::vector<double> pmf(static_cast<std::size_t>(max_draw) + 1, 0.0);
    for (std::size_t k = 0; k < pmf.size(); ++k) {
      pmf[k] = std::exp(-lambda + k * std::log(lambda) - std::lgamma(k + 1.0));
    }
    std::vector<double> observed, expected;
    double obs_acc = 0.0, exp_acc = 0.0;
    std::vector<double> counts(pmf.size(), 0.0);
    for (const auto d : draws) counts[static_cast<std::size_t>(d)] += 1.0;
    for (std::size_t k = 0; k < pmf.size(); ++k) {
      obs_acc += counts[k];
      exp_acc += pmf[k] * reps;
      if (exp_acc >= 5.0) {
        observed.push_back(obs_acc);
        expected.push_back(exp_acc);
        obs_acc = exp_acc = 0.0;
      }
    }
    // Remaining tail mass.
    observed.push_back(obs_acc);
    expected.push_back(exp_acc + (1.0 - std::accumulate(pmf.begin(), pmf.end(), 0.0)) * reps);
    if (expected.back() < 5.0) {
      observed[observed.size() - 2] += observed.back();
      expected[expected.size() - 2] += expected.back();
      observed.pop_back();
      expected.pop_back();
    }
    CHECK(teststats::chi2_gof_p(observed, expected) > 0.001);
  }
}

TEST_CASE("poisson edge rates") {
  Rng rng(5);
  CHECK(rng.poisson(0.0) == 0);
  CHECK_THROWS_AS(rng.poisson(-1.0), coxmax::ParameterError);
  CHECK_THROWS_AS(rng.poisson(1e9), coxmax::ParameterError);
}

TEST_SUITE_END();
