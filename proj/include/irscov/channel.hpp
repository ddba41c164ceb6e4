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

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

// Deterministic link-budget layer: scenario description, far-field validity,
// bistatic path loss, and the average-SNR scale factor. Everything is in
// linear units; dB conversions belong to the CLI boundary.

namespace irscov::channel {

/// Full description of one source -> surface -> destination link.
/// Distances and lengths in meters, powers in milliwatts, gains linear,
/// angles in radians. theta_s is measured from the surface normal;
/// theta_s == pi/2 is accepted as an explicit degenerate query (grazing
/// incidence, zero effective area).
struct Scenario {
  double d_s = 100.0;           ///< source -> surface distance
  double d_r = 100.0;           ///< surface -> destination distance
  double theta_s = 0.0;         ///< angle of incidence
  double g_s = 1.0;             ///< transmit antenna gain
  double g_r = 1.0;             ///< receive antenna gain
  double p_s = 1.0;             ///< transmit power, mW
  double noise_power = 1e-9;    ///< noise power, mW
  double element_side = 0.665;  ///< side length of one square element
  int n_elements = 1;           ///< element count N
  double wavelength = 1.33;     ///< carrier wavelength
  double sigma1 = 1.0;          ///< Rayleigh coefficient, first hop
  double sigma2 = 1.0;          ///< Rayleigh coefficient, second hop

  /// Total reflecting area N * l_e^2.
  double total_area() const {
    return static_cast<double>(n_elements) * element_side * element_side;
  }

  /// cos(theta_s), snapped to exact 0 at (and beyond) pi/2 so the grazing
  /// limit does not leak rounding noise into the SNR.
  double effective_cos() const {
    constexpr double half_pi = std::numbers::pi / 2.0;
    return theta_s >= half_pi ? 0.0 : std::cos(theta_s);
  }
};

struct Diagnostic {
  enum class Severity { error, warning };
  std::string field;
  Severity severity = Severity::error;
  std::string message;
};

/// Bistatic reflection path gain
///   G_s G_r / (4 pi)^2 * (uw / (d_s d_r))^2 * cos(theta_s)
/// with uw = N l_e^2. Reporting utility; the coverage layer works from
/// average_snr, whose aperture term carries cos^2 instead.
inline double path_loss(const Scenario& s) {
  const double uw = s.total_area();
  const double ratio = uw / (s.d_s * s.d_r);
  constexpr double four_pi_sq = 16.0 * std::numbers::pi * std::numbers::pi;
  return s.g_s * s.g_r / four_pi_sq * ratio * ratio * s.effective_cos();
}

/// Average SNR scale factor
///   P_s G_s G_r (uw cos(theta_s))^2 / (16 pi^2 sigma_n^2).
/// The d_s^2 d_r^2 division is applied in the coverage layer, where the
/// instantaneous SNR is A^2 * average_snr / (d_s d_r)^2.
inline double average_snr(const Scenario& s) {
  const double aperture = s.total_area() * s.effective_cos();
  constexpr double four_pi_sq = 16.0 * std::numbers::pi * std::numbers::pi;
  return s.p_s * s.g_s * s.g_r * aperture * aperture /
         (four_pi_sq * s.noise_power);
}

/// Far-field validity bound 2 (max{u, w})^2 / lambda. The N elements are
/// assumed to tile a square grid, so u = w = l_e * ceil(sqrt(N)).
inline double far_field_min_distance(const Scenario& s) {
  const double side_count =
      std::ceil(std::sqrt(static_cast<double>(s.n_elements)));
  const double u = s.element_side * side_count;
  return 2.0 * u * u / s.wavelength;
}

/// Checks every scenario invariant plus the far-field condition. Returns an
/// empty list iff the scenario is fully valid; invariant breaches come back
/// as errors, far-field breaches and the grazing angle as warnings.
inline std::vector<Diagnostic> validate(const Scenario& s) {
  std::vector<Diagnostic> out;
  const auto error = [&out](const char* field, const std::string& msg) {
    out.push_back({field, Diagnostic::Severity::error, msg});
  };
  const auto warning = [&out](const char* field, const std::string& msg) {
    out.push_back({field, Diagnostic::Severity::warning, msg});
  };

  if (!(s.d_s > 0.0)) error("d_s", "source distance must be > 0");
  if (!(s.d_r > 0.0)) error("d_r", "destination distance must be > 0");
  if (!(s.p_s > 0.0)) error("p_s", "transmit power must be > 0");
  if (!(s.noise_power > 0.0)) error("noise_power", "noise power must be > 0");
  if (!(s.element_side > 0.0)) error("element_side", "element side must be > 0");
  if (!(s.wavelength > 0.0)) error("wavelength", "wavelength must be > 0");
  if (!(s.g_s > 0.0)) error("g_s", "transmit gain must be > 0");
  if (!(s.g_r > 0.0)) error("g_r", "receive gain must be > 0");
  if (s.n_elements < 0) error("n_elements", "element count must be >= 0");
  if (!(s.sigma1 > 0.0)) error("sigma1", "fading coefficient must be > 0");
  if (!(s.sigma2 > 0.0)) error("sigma2", "fading coefficient must be > 0");

  constexpr double half_pi = std::numbers::pi / 2.0;
  if (!(s.theta_s >= 0.0) || s.theta_s > half_pi) {
    error("theta_s", "angle of incidence must lie in [0, pi/2]");
  } else if (s.theta_s >= half_pi) {
    warning("theta_s", "grazing incidence: effective area is zero");
  }

  if (out.empty()) {
    const double bound = far_field_min_distance(s);
    if (s.d_s < bound) {
      warning("d_s", "below the far-field bound " + std::to_string(bound) +
                         " m; the path-loss model may not apply");
    }
    if (s.d_r < bound) {
      warning("d_r", "below the far-field bound " + std::to_string(bound) +
                         " m; the path-loss model may not apply");
    }
  }
  return out;
}

inline bool has_errors(const std::vector<Diagnostic>& diags) {
  for (const auto& d : diags) {
    if (d.severity == Diagnostic::Severity::error) return true;
  }
  return false;
}

}  // namespace irscov::channel
