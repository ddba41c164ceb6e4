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

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <thread>
#include <vector>

#include "irscov/channel.hpp"
#include "irscov/coverage.hpp"
#include "irscov/dist.hpp"
#include "irscov/rng.hpp"

// Monte Carlo oracle for the analytic coverage expressions: simulates the
// phase-aligned composite gain A = sum_i alpha_i beta_i and counts threshold
// crossings of A^2 * snr_bar / (d_s d_r)^2.

namespace irscov::mc {

struct SimConfig {
  long long trials = 100000;
  std::uint64_t seed = 0;
  int workers = 1;  ///< parallelism hint; never affects the estimate
};

struct SimReport {
  double estimate = 0.0;
  long long trials = 0;
  std::uint64_t seed = 0;
  double half_width_95 = 0.0;  ///< 1.96 sqrt(p(1-p)/trials)
  channel::Scenario scenario_echo;
};

namespace detail {

// Trial t consumes the counter window [t * 2N, (t+1) * 2N): the draw
// sequence is a pure function of (seed, trial index), so any partition of
// trials over workers reproduces the same count.
inline long long count_covered(const channel::Scenario& sc, double gamma_th,
                               std::uint64_t seed, long long first,
                               long long last) {
  const long long n = sc.n_elements;
  const double snr_bar = channel::average_snr(sc);
  const double dist_sq = sc.d_s * sc.d_s * sc.d_r * sc.d_r;
  const dist::RayleighPair pair{sc.sigma1, sc.sigma2};
  long long covered = 0;
  CounterRng rng(seed);
  for (long long t = first; t < last; ++t) {
    rng.seek(static_cast<std::uint64_t>(t) * 2 * n);
    double gain = 0.0;
    for (long long i = 0; i < n; ++i) {
      gain += dist::sample_product(pair, rng);
    }
    const double snr = gain * gain * snr_bar / dist_sq;
    if (snr >= gamma_th) ++covered;
  }
  return covered;
}

}  // namespace detail

/// Empirical coverage probability over cfg.trials independent channel
/// realizations. Deterministic for a fixed (seed, trials, scenario)
/// regardless of the worker count.
inline SimReport simulate_coverage(const coverage::CoverageQuery& q,
                                   const SimConfig& cfg) {
  if (cfg.trials < 1) {
    throw std::invalid_argument("simulate_coverage: trials must be >= 1");
  }
  if (cfg.workers < 1) {
    throw std::invalid_argument("simulate_coverage: workers must be >= 1");
  }
  if (q.scenario.n_elements < 0) {
    throw std::invalid_argument("simulate_coverage: n_elements must be >= 0");
  }
  coverage::detail::check_threshold(q.gamma_th);

  const int workers = static_cast<int>(
      std::min<long long>(cfg.workers, cfg.trials));
  std::vector<long long> counts(workers, 0);
  if (workers <= 1) {
    counts[0] = detail::count_covered(q.scenario, q.gamma_th, cfg.seed, 0,
                                      cfg.trials);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    const long long chunk = (cfg.trials + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
      const long long first = static_cast<long long>(w) * chunk;
      const long long last = std::min(first + chunk, cfg.trials);
      pool.emplace_back([&, w, first, last] {
        counts[w] = detail::count_covered(q.scenario, q.gamma_th, cfg.seed,
                                          first, last);
      });
    }
    for (auto& th : pool) th.join();
  }

  long long covered = 0;
  for (long long c : counts) covered += c;

  SimReport rep;
  rep.trials = cfg.trials;
  rep.seed = cfg.seed;
  rep.estimate = static_cast<double>(covered) / static_cast<double>(cfg.trials);
  rep.half_width_95 = 1.96 * std::sqrt(rep.estimate * (1.0 - rep.estimate) /
                                       static_cast<double>(cfg.trials));
  rep.scenario_echo = q.scenario;
  return rep;
}

/// Sorts a sample and wraps it as a step-function CDF.
inline dist::EmpiricalCdf empirical_cdf(std::vector<double> samples) {
  if (samples.empty()) {
    throw std::invalid_argument("empirical_cdf: sample must be non-empty");
  }
  std::sort(samples.begin(), samples.end());
  return dist::EmpiricalCdf(std::move(samples));
}

}  // namespace irscov::mc
