// Copyright 2026 The irscov Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <vector>

#include "irscov/coverage.hpp"
#include "irscov/mc.hpp"

using namespace irscov;

namespace {

double db(double x) { return std::pow(10.0, x / 10.0); }

}  // namespace

TEST_CASE("threshold zero is always covered") {
  const coverage::CoverageQuery q{channel::Scenario{}, 0.0};
  const auto rep = mc::simulate_coverage(q, {2000, 1, 1});
  CHECK(rep.estimate == 1.0);
  CHECK(rep.half_width_95 == 0.0);
}

TEST_CASE("grazing incidence never covers a positive threshold") {
  auto s = channel::Scenario{};
  s.theta_s = std::numbers::pi / 2.0;
  const auto rep = mc::simulate_coverage({s, 1.0}, {2000, 1, 1});
  CHECK(rep.estimate == 0.0);
}

TEST_CASE("no elements means zero simulated coverage") {
  auto s = channel::Scenario{};
  s.n_elements = 0;
  CHECK(mc::simulate_coverage({s, 1.0}, {500, 9, 1}).estimate == 0.0);
  CHECK(mc::simulate_coverage({s, 0.0}, {500, 9, 1}).estimate == 1.0);
}

TEST_CASE("single-element estimate matches the exact closed form") {
  // scenario engineered so that the Bessel argument x equals 1
  auto s = channel::Scenario{};
  s.d_s = 1.0;
  s.d_r = 1.0;
  const double snr_bar = channel::average_snr(s);
  const coverage::CoverageQuery q{s, snr_bar};
  const auto rep = mc::simulate_coverage(q, {100000, 12345, 4});
  CHECK_THAT(rep.estimate,
             Catch::Matchers::WithinAbs(0.60190723019723457, 0.0035));
}

TEST_CASE("estimate is reproducible and worker-count independent") {
  auto s = channel::Scenario{};
  s.n_elements = 3;
  const coverage::CoverageQuery q{s, db(5.0)};
  const auto base = mc::simulate_coverage(q, {20000, 777, 1});
  for (const int workers : {2, 3, 7, 16}) {
    const auto rep = mc::simulate_coverage(q, {20000, 777, workers});
    CHECK(rep.estimate == base.estimate);
    CHECK(rep.half_width_95 == base.half_width_95);
  }
  // a different seed gives a different draw
  const auto other = mc::simulate_coverage(q, {20000, 778, 1});
  CHECK(other.estimate != base.estimate);
}

TEST_CASE("confidence half-width follows the binomial formula") {
  const coverage::CoverageQuery q{channel::Scenario{}, db(-10.0)};
  const auto rep = mc::simulate_coverage(q, {50000, 3, 2});
  const double expect =
      1.96 * std::sqrt(rep.estimate * (1.0 - rep.estimate) / 50000.0);
  CHECK(rep.half_width_95 == expect);
  CHECK(rep.trials == 50000);
  CHECK(rep.seed == 3);
  CHECK(rep.scenario_echo.n_elements == q.scenario.n_elements);
}

TEST_CASE("simulation tracks the analytic curves across a threshold sweep") {
  // N = 1: exact expression; N = 4: Gamma approximation with its own budget
  auto s1 = channel::Scenario{};
  for (int i = 0; i < 10; ++i) {
    const double th_db = -25.0 + 6.0 * i;
    const coverage::CoverageQuery q{s1, db(th_db)};
    const auto rep = mc::simulate_coverage(q, {100000, 55, 4});
    const double exact = coverage::coverage_exact_n1(q).probability;
    CHECK(std::fabs(rep.estimate - exact) <= rep.half_width_95 + 1e-3);
  }
  auto s4 = channel::Scenario{};
  s4.n_elements = 4;
  for (int i = 0; i < 10; ++i) {
    const double th_db = -10.0 + 4.0 * i;
    const coverage::CoverageQuery q{s4, db(th_db)};
    const auto rep = mc::simulate_coverage(q, {100000, 56, 4});
    const double approx = coverage::coverage_general(q).probability;
    CHECK(std::fabs(rep.estimate - approx) <= rep.half_width_95 + 0.02);
  }
}

TEST_CASE("estimator spread shrinks like one over sqrt(trials)") {
  auto s = channel::Scenario{};
  const coverage::CoverageQuery q{s, db(-8.0)};  // p well inside (0, 1)
  const auto spread = [&](long long trials, std::uint64_t seed0) {
    double sum = 0.0;
    double sum_sq = 0.0;
    const int reps = 30;
    for (int r = 0; r < reps; ++r) {
      const double p =
          mc::simulate_coverage(q, {trials, seed0 + r, 2}).estimate;
      sum += p;
      sum_sq += p * p;
    }
    const double mean = sum / reps;
    return std::sqrt(sum_sq / reps - mean * mean);
  };
  const double sd_small = spread(2000, 100);
  const double sd_large = spread(8000, 500);
  CHECK_THAT(sd_small / sd_large, Catch::Matchers::WithinAbs(2.0, 0.4));
}

TEST_CASE("simulation config is validated") {
  const coverage::CoverageQuery q{channel::Scenario{}, 1.0};
  CHECK_THROWS_AS(mc::simulate_coverage(q, {0, 1, 1}), std::invalid_argument);
  CHECK_THROWS_AS(mc::simulate_coverage(q, {100, 1, 0}),
                  std::invalid_argument);
  auto bad = q;
  bad.scenario.n_elements = -2;
  CHECK_THROWS_AS(mc::simulate_coverage(bad, {100, 1, 1}),
                  std::invalid_argument);
}

TEST_CASE("more workers than trials is fine") {
  const coverage::CoverageQuery q{channel::Scenario{}, db(-20.0)};
  const auto a = mc::simulate_coverage(q, {7, 2, 64});
  const auto b = mc::simulate_coverage(q, {7, 2, 1});
  CHECK(a.estimate == b.estimate);
}
