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
#include <limits>
#include <stdexcept>
#include <string>

#include "irscov/channel.hpp"
#include "irscov/dist.hpp"
#include "irscov/specfun.hpp"

// Closed-form coverage probability: the exact single-element expression,
// the Gamma-approximated expression for any element count, and the
// smallest-N solver for a target coverage level.

namespace irscov::coverage {

enum class Method { exact_n1, gamma_approx, monte_carlo };

inline const char* method_name(Method m) {
  switch (m) {
    case Method::exact_n1: return "exact-n1";
    case Method::gamma_approx: return "gamma-approx";
    case Method::monte_carlo: return "monte-carlo";
  }
  return "unknown";
}

struct CoverageQuery {
  channel::Scenario scenario;
  double gamma_th = 1.0;  ///< linear SNR threshold
};

struct CoverageResult {
  double probability = 0.0;
  Method method = Method::gamma_approx;
  double s_value = 0.0;      ///< argument handed to the tail function
  double shape_value = 0.0;  ///< Gamma shape N*k (0 for the exact form)
  std::string note;          ///< non-empty for degenerate queries
};

namespace detail {

inline void check_threshold(double gamma_th) {
  if (!(gamma_th >= 0.0)) {
    throw std::domain_error("coverage: gamma_th must be >= 0");
  }
}

inline CoverageResult degenerate_zero_snr(Method m) {
  return {0.0, m, std::numeric_limits<double>::infinity(), 0.0,
          "average SNR is zero; any positive threshold is unreachable"};
}

}  // namespace detail

/// Exact coverage probability for a single element:
///   P = x K1(x),  x = d_s d_r / (sigma1 sigma2) * sqrt(gamma_th / snr_bar).
/// Requires n_elements == 1. A zero threshold is covered with certainty;
/// a zero average SNR yields probability 0 with a diagnostic note.
inline CoverageResult coverage_exact_n1(const CoverageQuery& q,
                                        const specfun::Accuracy& acc = {}) {
  detail::check_threshold(q.gamma_th);
  if (q.scenario.n_elements != 1) {
    throw std::invalid_argument("coverage_exact_n1: scenario must have N = 1");
  }
  if (q.gamma_th == 0.0) {
    return {1.0, Method::exact_n1, 0.0, 0.0, {}};
  }
  const double snr_bar = channel::average_snr(q.scenario);
  if (snr_bar == 0.0) {
    return detail::degenerate_zero_snr(Method::exact_n1);
  }
  const double x = q.scenario.d_s * q.scenario.d_r /
                   (q.scenario.sigma1 * q.scenario.sigma2) *
                   std::sqrt(q.gamma_th / snr_bar);
  const double p = x * specfun::bessel_k1(x, acc);
  return {std::clamp(p, 0.0, 1.0), Method::exact_n1, x, 0.0, {}};
}

/// Gamma-approximated coverage probability for any element count:
///   P = Q(N k, s),  s = d_s d_r / theta * sqrt(gamma_th / snr_bar),
/// with (k, theta) the moment-matched product-law fit and snr_bar computed
/// from the scenario's total area N l_e^2. N = 0 resolves to the exact
/// limits (0 for a positive threshold, 1 for threshold zero).
inline CoverageResult coverage_general(const CoverageQuery& q,
                                       const specfun::Accuracy& acc = {}) {
  detail::check_threshold(q.gamma_th);
  const channel::Scenario& sc = q.scenario;
  if (sc.n_elements < 0) {
    throw std::domain_error("coverage_general: n_elements must be >= 0");
  }
  const dist::GammaParams g =
      dist::moment_match({sc.sigma1, sc.sigma2});
  const double shape = static_cast<double>(sc.n_elements) * g.shape;
  if (q.gamma_th == 0.0) {
    return {1.0, Method::gamma_approx, 0.0, shape, {}};
  }
  if (sc.n_elements == 0) {
    return {0.0, Method::gamma_approx,
            std::numeric_limits<double>::infinity(), 0.0,
            "no reflecting elements"};
  }
  const double snr_bar = channel::average_snr(sc);
  if (snr_bar == 0.0) {
    return detail::degenerate_zero_snr(Method::gamma_approx);
  }
  const double s =
      sc.d_s * sc.d_r / g.scale * std::sqrt(q.gamma_th / snr_bar);
  const double p = specfun::reg_gamma_q(shape, s, acc);
  return {std::clamp(p, 0.0, 1.0), Method::gamma_approx, s, shape, {}};
}

/// Smallest element count whose coverage probability reaches 1 - epsilon at
/// the given threshold. Each candidate N is evaluated with its own total
/// area N l_e^2, so both the Gamma shape and the average SNR grow with N;
/// coverage is monotone in N and the scan ascends from 1.
inline int optimal_elements(const channel::Scenario& scenario, double gamma_th,
                            double epsilon = 1e-3, int cap = 1'000'000,
                            const specfun::Accuracy& acc = {}) {
  if (!(gamma_th > 0.0)) {
    throw std::domain_error("optimal_elements: gamma_th must be > 0");
  }
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw std::domain_error("optimal_elements: epsilon must be in (0, 1)");
  }
  if (cap < 1) throw std::domain_error("optimal_elements: cap must be >= 1");
  const double target = 1.0 - epsilon;
  CoverageQuery q{scenario, gamma_th};
  for (int n = 1; n <= cap; ++n) {
    q.scenario.n_elements = n;
    if (coverage_general(q, acc).probability >= target) return n;
  }
  throw std::runtime_error(
      "optimal_elements: no N <= " + std::to_string(cap) +
      " reaches the requested coverage level");
}

}  // namespace irscov::coverage
