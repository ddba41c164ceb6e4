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
#include <numbers>
#include <stdexcept>
#include <vector>

#include "irscov/rng.hpp"
#include "irscov/specfun.hpp"

// Distribution theory of the composite channel gain: the double-Rayleigh
// product law, its moment-matched Gamma fit, the N-fold Gamma sum, the
// generalized-Gamma CDF of the squared gain, and the Kolmogorov-Smirnov
// statistic used to score the fit.

namespace irscov::dist {

/// Rayleigh fading coefficients of the two hops.
struct RayleighPair {
  double sigma1 = 1.0;
  double sigma2 = 1.0;

  /// a = sigma1 * sigma2, the scale of the product law.
  double product_scale() const { return sigma1 * sigma2; }
};

inline void check_pair(const RayleighPair& p) {
  if (!(p.sigma1 > 0.0) || !(p.sigma2 > 0.0)) {
    throw std::domain_error("RayleighPair: both coefficients must be > 0");
  }
}

/// Shape/scale parameters of a Gamma distribution.
struct GammaParams {
  double shape = 1.0;
  double scale = 1.0;
};

/// PDF of the product eta = alpha * beta of two independent Rayleigh
/// variates: f(eta) = eta / a^2 * K0(eta / a). The removable singularity at
/// eta = 0 evaluates to 0 (eta vanishes faster than K0 diverges).
inline double product_pdf(const RayleighPair& pair, double eta,
                          const specfun::Accuracy& acc = {}) {
  check_pair(pair);
  if (!(eta >= 0.0)) throw std::domain_error("product_pdf: eta must be >= 0");
  if (eta == 0.0) return 0.0;
  const double a = pair.product_scale();
  return eta / (a * a) * specfun::bessel_k0(eta / a, acc);
}

/// CDF of the product: F(eta) = 1 - eta / a * K1(eta / a).
inline double product_cdf(const RayleighPair& pair, double eta,
                          const specfun::Accuracy& acc = {}) {
  check_pair(pair);
  if (!(eta >= 0.0)) throw std::domain_error("product_cdf: eta must be >= 0");
  if (eta == 0.0) return 0.0;  // x K1(x) -> 1 as x -> 0
  const double x = eta / pair.product_scale();
  return std::clamp(1.0 - x * specfun::bessel_k1(x, acc), 0.0, 1.0);
}

/// Gamma fit of the product law by matching its first two moments
/// (a pi/2 and 4 a^2):
///   shape k = pi^2 / (16 - pi^2),   scale theta = (16 - pi^2) / (2 pi) * a.
inline GammaParams moment_match(const RayleighPair& pair) {
  check_pair(pair);
  constexpr double pi_sq = std::numbers::pi * std::numbers::pi;
  return {pi_sq / (16.0 - pi_sq),
          (16.0 - pi_sq) / (2.0 * std::numbers::pi) * pair.product_scale()};
}

/// Distribution of the sum of n iid Ga(k, theta) variates: Ga(n k, theta).
inline GammaParams sum_params(const GammaParams& g, int n) {
  if (n < 1) throw std::domain_error("sum_params: n must be >= 1");
  return {static_cast<double>(n) * g.shape, g.scale};
}

/// CDF of the square of a Ga(n k, theta) variate (a generalized Gamma law):
/// F(z) = P(n k, sqrt(z) / theta).
inline double a_squared_cdf(const GammaParams& g, int n, double z,
                            const specfun::Accuracy& acc = {}) {
  if (n < 1) throw std::domain_error("a_squared_cdf: n must be >= 1");
  if (!(z >= 0.0)) throw std::domain_error("a_squared_cdf: z must be >= 0");
  return specfun::reg_gamma_p(static_cast<double>(n) * g.shape,
                              std::sqrt(z) / g.scale, acc);
}

/// Step-function CDF of a sample, kept sorted ascending.
class EmpiricalCdf {
 public:
  explicit EmpiricalCdf(std::vector<double> sorted_samples)
      : samples_(std::move(sorted_samples)) {
    if (samples_.empty()) {
      throw std::invalid_argument("EmpiricalCdf: sample must be non-empty");
    }
    if (!std::is_sorted(samples_.begin(), samples_.end())) {
      throw std::invalid_argument("EmpiricalCdf: sample must be sorted");
    }
  }

  double operator()(double x) const {
    const auto it = std::upper_bound(samples_.begin(), samples_.end(), x);
    return static_cast<double>(it - samples_.begin()) /
           static_cast<double>(samples_.size());
  }

  const std::vector<double>& points() const { return samples_; }
  std::size_t size() const { return samples_.size(); }

 private:
  std::vector<double> samples_;
};

/// Two-sided Kolmogorov-Smirnov statistic between an empirical CDF and a
/// model CDF: the step convention compares both i/n and (i-1)/n against the
/// model at every sample point.
template <class Cdf>
double ks_statistic(const EmpiricalCdf& sample_cdf, Cdf&& model_cdf) {
  const auto& pts = sample_cdf.points();
  const double n = static_cast<double>(pts.size());
  double d = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const double f = model_cdf(pts[i]);
    const double hi = static_cast<double>(i + 1) / n - f;
    const double lo = f - static_cast<double>(i) / n;
    d = std::max({d, hi, lo});
  }
  return d;
}

/// One Rayleigh draw by inverse transform: sigma * sqrt(-2 ln U), U in (0,1].
template <class Urbg>
double sample_rayleigh(double sigma, Urbg& gen) {
  return sigma * std::sqrt(-2.0 * std::log(uniform_unit(gen)));
}

/// One draw of the product eta = alpha * beta (two independent Rayleigh
/// variates). Consumes exactly two generator outputs.
template <class Urbg>
double sample_product(const RayleighPair& pair, Urbg& gen) {
  check_pair(pair);
  const double alpha = sample_rayleigh(pair.sigma1, gen);
  const double beta = sample_rayleigh(pair.sigma2, gen);
  return alpha * beta;
}

}  // namespace irscov::dist
