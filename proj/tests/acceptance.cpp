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

// Acceptance suite: end-to-end checks of the analytic kernels, the
// distribution theory, the coverage expressions, the Monte Carlo oracle, and
// the CLI, each printed as one PASS/FAIL line. Run with no arguments for the
// whole suite or with `--criterion <1..10>` for a single entry.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "irscov/cli.hpp"
#include "irscov/irscov.hpp"
#include "oracle/quad_oracle.hpp"

using namespace irscov;

namespace {

double db(double x) { return std::pow(10.0, x / 10.0); }

double rel_err(double got, double want) {
  return std::fabs(got - want) / std::fabs(want);
}

std::vector<double> log_grid(double lo, double hi, int n) {
  std::vector<double> g(n);
  for (int i = 0; i < n; ++i) {
    g[i] = lo * std::pow(hi / lo, static_cast<double>(i) / (n - 1));
  }
  return g;
}

std::vector<double> lin_grid(double lo, double hi, int n) {
  std::vector<double> g(n);
  for (int i = 0; i < n; ++i) {
    g[i] = lo + (hi - lo) * static_cast<double>(i) / (n - 1);
  }
  return g;
}

struct Check {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    }
  }
};

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

// --- 1: special-function accuracy against the quadrature oracle ------------

void criterion_1(Check& c) {
  // oracle quadrature at 1e-11 still leaves two decades of slack below the
  // 1e-9 comparison tolerance
  constexpr double oracle_tol = 1e-11;
  double worst_k = 0.0;
  for (const double x : log_grid(1e-6, 700.0, 200)) {
    worst_k = std::max(worst_k, rel_err(specfun::bessel_k0(x),
                                        oracle::bessel_k0(x, oracle_tol)));
    worst_k = std::max(worst_k, rel_err(specfun::bessel_k1(x),
                                        oracle::bessel_k1(x, oracle_tol)));
  }
  c.require(worst_k <= 1e-9, "Bessel K error " + fmt(worst_k) + " > 1e-9");

  double worst_g = 0.0;
  for (const double k : log_grid(0.05, 50.0, 20)) {
    for (const double r : log_grid(0.1, 10.0, 10)) {
      const double s = k * r;
      const double p = specfun::reg_gamma_p(k, s);
      const double q = specfun::reg_gamma_q(k, s);
      const double e = p <= q ? rel_err(p, oracle::reg_gamma_p(k, s))
                              : rel_err(q, oracle::reg_gamma_q(k, s));
      worst_g = std::max(worst_g, e);
    }
  }
  c.require(worst_g <= 1e-9,
            "incomplete Gamma error " + fmt(worst_g) + " > 1e-9");
}

// --- 2: product pdf/cdf consistency -----------------------------------------

void criterion_2(Check& c) {
  const dist::RayleighPair pair{1.0, 1.0};
  const double a = pair.product_scale();
  const double h = 1e-5;
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    const double eta = a * (0.05 + (10.0 - 0.05) * i / 49.0);
    const double deriv =
        (dist::product_cdf(pair, eta + h) - dist::product_cdf(pair, eta - h)) /
        (2.0 * h);
    worst = std::max(worst, rel_err(deriv, dist::product_pdf(pair, eta)));
  }
  c.require(worst <= 1e-5,
            "cdf derivative mismatch " + fmt(worst) + " > 1e-5");

  const double mass = oracle::integrate(
      [&pair](double eta) { return dist::product_pdf(pair, eta); }, 0.0,
      45.0 * a, 1e-9);
  c.require(std::fabs(mass - 1.0) <= 1e-6,
            "pdf mass " + fmt(mass) + " deviates from 1 by more than 1e-6");
}

// --- 3: moment matching ------------------------------------------------------

void criterion_3(Check& c) {
  for (const dist::RayleighPair pair :
       {dist::RayleighPair{1.0, 1.0}, dist::RayleighPair{0.8, 1.7}}) {
    const double a = pair.product_scale();
    CounterRng rng(91);
    const int n = 1'000'000;
    double sum = 0.0;
    double sum_sq = 0.0;
    for (int i = 0; i < n; ++i) {
      const double x = dist::sample_product(pair, rng);
      sum += x;
      sum_sq += x * x;
    }
    const double m1 = sum / n;
    const double m2 = sum_sq / n;
    c.require(rel_err(m1, a * std::numbers::pi / 2.0) <= 0.01,
              "sampled mean off by " +
                  fmt(rel_err(m1, a * std::numbers::pi / 2.0)));
    c.require(rel_err(m2, 4.0 * a * a) <= 0.01,
              "sampled second moment off by " +
                  fmt(rel_err(m2, 4.0 * a * a)));

    const auto g = dist::moment_match(pair);
    c.require(rel_err(g.shape * g.scale, a * std::numbers::pi / 2.0) <= 1e-12,
              "matched first moment not exact");
    c.require(rel_err(g.shape * (g.shape + 1.0) * g.scale * g.scale,
                      4.0 * a * a) <= 1e-12,
              "matched second moment not exact");
  }
}

// --- 4: KS fit of the Gamma approximation ------------------------------------

void criterion_4(Check& c) {
  for (const double sigma : {0.5, 1.0, 2.0}) {
    const dist::RayleighPair pair{sigma, sigma};
    CounterRng rng(7);
    std::vector<double> samples(100000);
    for (auto& x : samples) x = dist::sample_product(pair, rng);
    const auto ecdf = mc::empirical_cdf(std::move(samples));
    const auto g = dist::moment_match(pair);
    const double d = dist::ks_statistic(ecdf, [&g](double t) {
      return t <= 0.0 ? 0.0 : specfun::reg_gamma_p(g.shape, t / g.scale);
    });
    c.require(d < 0.02,
              "KS statistic " + fmt(d) + " at sigma " + fmt(sigma));
  }
}

// --- 5: single-element coverage: exact vs approximation vs simulation --------

void criterion_5(Check& c) {
  const channel::Scenario s{};
  const auto grid = lin_grid(-30.0, 30.0, 20);
  double max_gap = 0.0;
  double gap_near_minus9 = 0.0;
  double best_dist = 1e9;
  for (const double th_db : grid) {
    const coverage::CoverageQuery q{s, db(th_db)};
    const double exact = coverage::coverage_exact_n1(q).probability;
    const double approx = coverage::coverage_general(q).probability;
    const double gap = std::fabs(exact - approx);
    max_gap = std::max(max_gap, gap);
    if (std::fabs(th_db + 9.0) < best_dist) {
      best_dist = std::fabs(th_db + 9.0);
      gap_near_minus9 = gap;
    }

    const auto rep = mc::simulate_coverage(q, {100000, 2024, 4});
    c.require(std::fabs(rep.estimate - exact) <= rep.half_width_95 + 1e-3,
              "MC deviates from exact by " +
                  fmt(std::fabs(rep.estimate - exact)) + " at " + fmt(th_db) +
                  " dB");
  }
  std::printf("    exact-vs-approx: max gap %.3e over the sweep, %.3e at the "
              "point nearest -9 dB\n",
              max_gap, gap_near_minus9);
  c.require(gap_near_minus9 < 5e-3,
            "gap near -9 dB is " + fmt(gap_near_minus9));
}

// --- 6: multi-element agreement and the N = 3 -> 4 jump ----------------------

void criterion_6(Check& c) {
  for (const int n : {2, 3, 4, 5}) {
    channel::Scenario s{};
    s.n_elements = n;
    for (const double th_db : lin_grid(-20.0, 25.0, 20)) {
      const coverage::CoverageQuery q{s, db(th_db)};
      const double approx = coverage::coverage_general(q).probability;
      const auto rep = mc::simulate_coverage(
          q, {100000, 4000 + static_cast<std::uint64_t>(n), 4});
      c.require(std::fabs(rep.estimate - approx) <= rep.half_width_95 + 0.02,
                "MC deviates from approximation by " +
                    fmt(std::fabs(rep.estimate - approx)) + " at N = " +
                    std::to_string(n) + ", " + fmt(th_db) + " dB");
    }
  }

  channel::Scenario s3{};
  s3.n_elements = 3;
  channel::Scenario s4{};
  s4.n_elements = 4;
  const double p3 = coverage::coverage_general({s3, db(10.0)}).probability;
  const double p4 = coverage::coverage_general({s4, db(10.0)}).probability;
  std::printf("    coverage jump from 3 to 4 elements at 10 dB: %.4f\n",
              p4 - p3);
  c.require(p4 - p3 > 0.2, "jump " + fmt(p4 - p3) + " not > 0.2");
}

// --- 7: optimal element count ------------------------------------------------

void criterion_7(Check& c) {
  const channel::Scenario s{};
  const double eps = 1e-3;
  std::vector<int> stars;
  for (const double th_db : {10.0, 20.0, 30.0}) {
    const double th = db(th_db);
    const int n_star = coverage::optimal_elements(s, th, eps);
    stars.push_back(n_star);

    auto coverage_at = [&](int n) {
      channel::Scenario sn = s;
      sn.n_elements = n;
      return coverage::coverage_general({sn, th}).probability;
    };
    c.require(coverage_at(n_star) >= 1.0 - eps, "N* misses the target");
    c.require(n_star == 1 || coverage_at(n_star - 1) < 1.0 - eps,
              "N* is not the first crossing");

    channel::Scenario sn = s;
    sn.n_elements = n_star;
    const auto rep = mc::simulate_coverage({sn, th}, {100000, 31337, 4});
    c.require(rep.estimate >= 1.0 - eps - rep.half_width_95,
              "MC at N* gives " + fmt(rep.estimate));
  }
  std::printf("    N* at {10, 20, 30} dB: {%d, %d, %d}\n", stars[0], stars[1],
              stars[2]);
  c.require(stars[0] < stars[1] && stars[1] < stars[2],
            "N* not strictly increasing over the thresholds");
  // the default link is calibrated to land on the published triple
  c.require(stars[0] == 8 && stars[1] == 12 && stars[2] == 19,
            "calibrated N* should be {8, 12, 19}");
}

// --- 8: coverage trends ------------------------------------------------------

void criterion_8(Check& c) {
  const std::vector<double> thresholds = {db(0.0), db(10.0), db(20.0)};

  for (const double th : thresholds) {
    // element size up, fixed N = 4
    double prev = 0.0;
    for (const double side : lin_grid(0.1, 1.4, 10)) {
      channel::Scenario s{};
      s.n_elements = 4;
      s.element_side = side;
      const double p = coverage::coverage_general({s, th}).probability;
      c.require(p >= prev, "coverage not non-decreasing in element_side");
      prev = p;
    }

    // N up at fixed total area
    const double uw = 4.0 * 0.665 * 0.665;
    prev = 0.0;
    for (int n = 1; n <= 10; ++n) {
      channel::Scenario s{};
      s.n_elements = n;
      s.element_side = std::sqrt(uw / n);
      const double p = coverage::coverage_general({s, th}).probability;
      c.require(p >= prev, "coverage not non-decreasing in N at fixed area");
      prev = p;
    }

    // fading coefficient up
    prev = 0.0;
    for (const double sig : lin_grid(0.5, 2.5, 10)) {
      channel::Scenario s{};
      s.sigma1 = s.sigma2 = sig;
      const double p = coverage::coverage_general({s, th}).probability;
      c.require(p >= prev, "coverage not non-decreasing in sigma");
      prev = p;
    }

    // incidence angle up
    prev = 1.0;
    for (const double deg : lin_grid(0.0, 89.0, 10)) {
      channel::Scenario s{};
      s.theta_s = deg * std::numbers::pi / 180.0;
      const double p = coverage::coverage_general({s, th}).probability;
      c.require(p <= prev, "coverage not non-increasing in theta_s");
      prev = p;
    }
  }
}

// --- 9: limit behaviour -------------------------------------------------------

void criterion_9(Check& c) {
  const channel::Scenario s{};
  c.require(coverage::coverage_general({s, 0.0}).probability == 1.0,
            "threshold 0 must give probability exactly 1");
  c.require(coverage::coverage_exact_n1({s, 0.0}).probability == 1.0,
            "exact form at threshold 0 must give exactly 1");

  const double snr_bar = channel::average_snr(s);
  const double p_huge =
      coverage::coverage_general({s, 1e9 * snr_bar}).probability;
  c.require(p_huge < 1e-6, "huge threshold leaves coverage " + fmt(p_huge));

  channel::Scenario none = s;
  none.n_elements = 0;
  c.require(coverage::coverage_general({none, 1.0}).probability == 0.0,
            "no elements must give probability exactly 0");

  channel::Scenario many = s;
  many.n_elements = 10000;
  const double p_many =
      coverage::coverage_general({many, db(10.0)}).probability;
  c.require(p_many >= 1.0 - 1e-9, "10^4 elements give only " + fmt(p_many));
}

// --- 10: CLI determinism across worker counts --------------------------------

void criterion_10(Check& c) {
  const auto run_with = [](const char* workers) {
    std::ostringstream out;
    std::ostringstream err;
    const int code = cli::run({"validate-mc", "--start-db", "-20", "--stop-db",
                               "20", "--points", "8", "--trials", "40000",
                               "--seed", "99", "--workers", workers},
                              out, err);
    return std::pair<int, std::string>(code, out.str());
  };
  const auto a = run_with("1");
  const auto b = run_with("7");
  c.require(a.first == 0 && b.first == 0, "validate-mc did not exit cleanly");
  c.require(a.second == b.second,
            "CSV output differs between worker counts");
  c.require(!a.second.empty(), "validate-mc produced no output");
}

struct Criterion {
  int id;
  const char* name;
  void (*fn)(Check&);
  double time_limit_s;  // 0 = no stated bound
};

const Criterion kCriteria[] = {
    {1, "special functions vs quadrature oracle (1e-9)", criterion_1, 1.0},
    {2, "product pdf/cdf consistency", criterion_2, 0.0},
    {3, "moment matching (sampled and algebraic)", criterion_3, 0.0},
    {4, "KS fit of the Gamma approximation", criterion_4, 10.0},
    {5, "single-element coverage: exact vs approx vs MC", criterion_5, 30.0},
    {6, "multi-element coverage vs MC and the 3->4 jump", criterion_6, 0.0},
    {7, "optimal element count", criterion_7, 0.0},
    {8, "coverage trends in size, count, fading, angle", criterion_8, 10.0},
    {9, "limit behaviour", criterion_9, 0.0},
    {10, "CLI determinism across worker counts", criterion_10, 0.0},
};

bool run_criterion(const Criterion& cr) {
  Check check;
  const auto t0 = std::chrono::steady_clock::now();
  cr.fn(check);
  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  if (cr.time_limit_s > 0.0 && elapsed > cr.time_limit_s) {
    check.require(false, "runtime " + fmt(elapsed) + " s exceeds " +
                             fmt(cr.time_limit_s) + " s");
  }
  std::printf("%s  %2d  %s (%.2f s)%s%s\n", check.ok ? "PASS" : "FAIL", cr.id,
              cr.name, elapsed, check.ok ? "" : ": ",
              check.ok ? "" : check.detail.c_str());
  std::fflush(stdout);
  return check.ok;
}

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) {
      only = std::atoi(argv[++i]);
    }
  }
  int failures = 0;
  int executed = 0;
  for (const auto& cr : kCriteria) {
    if (only != 0 && cr.id != only) continue;
    ++executed;
    if (!run_criterion(cr)) ++failures;
  }
  if (executed == 0) {
    std::fprintf(stderr, "no such criterion: %d\n", only);
    return 2;
  }
  if (only == 0) {
    std::printf("%d/%d criteria passed\n", executed - failures, executed);
  }
  return failures == 0 ? 0 : 1;
}
