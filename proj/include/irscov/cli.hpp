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
#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <map>
#include <numbers>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "CLI11.hpp"

#include "irscov/channel.hpp"
#include "irscov/coverage.hpp"
#include "irscov/dist.hpp"
#include "irscov/mc.hpp"

// Command-line front end: config ingestion, dB <-> linear conversion, sweep
// execution, CSV emission, and exit-code discipline. All CSV numbers use a
// locale-independent decimal point; probabilities carry 12 significant
// digits; the scenario in force is echoed as '#' comment lines that re-parse
// as a config file once the comment marker is stripped.
//
// Exit codes: 0 success, 1 validation/usage error, 2 numerical
// non-convergence.

namespace irscov::cli {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double v) { return 10.0 * std::log10(v); }
inline double deg_to_rad(double deg) {
  return deg * (std::numbers::pi / 180.0);
}

/// Shortest round-trip decimal form (config echoes re-parse bit-exactly).
inline std::string format_exact(double v) {
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

/// Fixed CSV precision: 12 significant digits.
inline std::string format_csv(double v) {
  char buf[40];
  const auto res =
      std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 12);
  return std::string(buf, res.ptr);
}

inline constexpr const char* csv_header_analytic = "variable,value,p_analytic";
inline constexpr const char* csv_header_mc =
    "variable,value,p_analytic,p_mc,ci95";

/// The twelve recognized config keys, in canonical echo order.
inline const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = {
      "d_s_m",       "d_r_m",      "theta_s_deg",    "g_s_dbi",
      "g_r_dbi",     "p_s_dbm",    "noise_dbm",      "element_side_m",
      "n_elements",  "wavelength_m", "sigma1",       "sigma2"};
  return keys;
}

/// A scenario together with the config-unit values it was built from.
/// The raw values are what the echo emits, so parse(echo(x)) reconstructs
/// the linear fields bit-identically.
struct ParsedConfig {
  channel::Scenario scenario;
  std::vector<std::pair<std::string, double>> raw;  // canonical key order
  std::vector<channel::Diagnostic> warnings;

  double raw_value(std::string_view key) const {
    for (const auto& [k, v] : raw) {
      if (k == key) return v;
    }
    throw std::logic_error("unknown config key requested");
  }
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  const auto* ws = " \t\r";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

inline double parse_number(std::string_view text, int line_no) {
  double v = 0.0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size()) {
    throw ConfigError("line " + std::to_string(line_no) +
                      ": invalid number '" + std::string(text) + "'");
  }
  return v;
}

}  // namespace detail

/// Parses `key = value` config text (UTF-8, '#' comments). Missing keys take
/// the built-in defaults: 100 m hops at normal incidence, 0 dBi gains, 0 dBm
/// transmit power, -90 dBm noise, unit fading coefficients, 1.33 m
/// wavelength, half-wavelength elements, one element. The resulting scenario
/// must be free of validation errors.
inline ParsedConfig parse_config_text(const std::string& text) {
  std::map<std::string, double, std::less<>> found;
  const auto& keys = config_keys();

  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view sv(line);
    if (const auto hash = sv.find('#'); hash != std::string_view::npos) {
      sv = sv.substr(0, hash);
    }
    sv = detail::trim(sv);
    if (sv.empty()) continue;
    const auto eq = sv.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("line " + std::to_string(line_no) +
                        ": expected 'key = value'");
    }
    const auto key = detail::trim(sv.substr(0, eq));
    const auto val = detail::trim(sv.substr(eq + 1));
    if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
      throw ConfigError("line " + std::to_string(line_no) + ": unknown key '" +
                        std::string(key) + "'");
    }
    if (found.count(key)) {
      throw ConfigError("line " + std::to_string(line_no) +
                        ": duplicate key '" + std::string(key) + "'");
    }
    found.emplace(std::string(key), detail::parse_number(val, line_no));
  }

  const auto get = [&found](std::string_view key, double fallback) {
    const auto it = found.find(key);
    return it == found.end() ? fallback : it->second;
  };

  ParsedConfig cfg;
  const double wavelength = get("wavelength_m", 1.33);
  const double raw[] = {
      get("d_s_m", 100.0),
      get("d_r_m", 100.0),
      get("theta_s_deg", 0.0),
      get("g_s_dbi", 0.0),
      get("g_r_dbi", 0.0),
      get("p_s_dbm", 0.0),
      get("noise_dbm", -90.0),
      get("element_side_m", wavelength / 2.0),
      get("n_elements", 1.0),
      wavelength,
      get("sigma1", 1.0),
      get("sigma2", 1.0),
  };
  for (std::size_t i = 0; i < keys.size(); ++i) {
    cfg.raw.emplace_back(keys[i], raw[i]);
  }

  const double n_raw = cfg.raw_value("n_elements");
  if (!(n_raw >= 0.0) || n_raw != std::floor(n_raw) || n_raw > 2.0e9) {
    throw ConfigError("n_elements must be a non-negative integer");
  }

  channel::Scenario& s = cfg.scenario;
  s.d_s = cfg.raw_value("d_s_m");
  s.d_r = cfg.raw_value("d_r_m");
  s.theta_s = deg_to_rad(cfg.raw_value("theta_s_deg"));
  s.g_s = db_to_linear(cfg.raw_value("g_s_dbi"));
  s.g_r = db_to_linear(cfg.raw_value("g_r_dbi"));
  s.p_s = db_to_linear(cfg.raw_value("p_s_dbm"));
  s.noise_power = db_to_linear(cfg.raw_value("noise_dbm"));
  s.element_side = cfg.raw_value("element_side_m");
  s.n_elements = static_cast<int>(n_raw);
  s.wavelength = wavelength;
  s.sigma1 = cfg.raw_value("sigma1");
  s.sigma2 = cfg.raw_value("sigma2");

  auto diags = channel::validate(s);
  std::string errors;
  for (auto& d : diags) {
    if (d.severity == channel::Diagnostic::Severity::error) {
      errors += "\n  " + d.field + ": " + d.message;
    } else {
      cfg.warnings.push_back(std::move(d));
    }
  }
  if (!errors.empty()) {
    throw ConfigError("invalid scenario:" + errors);
  }
  return cfg;
}

inline ParsedConfig parse_config_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ConfigError("cannot open config file '" + path + "'");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

/// Scenario ingestion from a config file (empty path means defaults only).
inline channel::Scenario parse_config(const std::string& path) {
  return parse_config_file(path).scenario;
}

/// Config-format echo of the values in force; stripping a leading "# " from
/// the CSV comment block yields exactly this text.
inline std::string scenario_echo_text(const ParsedConfig& cfg) {
  std::string out;
  for (const auto& [key, value] : cfg.raw) {
    out += key;
    out += " = ";
    out += format_exact(value);
    out += "\n";
  }
  return out;
}

namespace detail {

inline void emit_scenario_comments(std::ostream& out, const ParsedConfig& cfg) {
  std::istringstream lines(scenario_echo_text(cfg));
  std::string line;
  while (std::getline(lines, line)) {
    out << "# " << line << "\n";
  }
}

inline void emit_warnings(std::ostream& err,
                          const std::vector<channel::Diagnostic>& warnings) {
  for (const auto& w : warnings) {
    err << "warning: " << w.field << ": " << w.message << "\n";
  }
}

inline ParsedConfig load_scenario(const std::string& config_path,
                                  std::ostream& err) {
  ParsedConfig cfg = config_path.empty() ? parse_config_text("")
                                         : parse_config_file(config_path);
  emit_warnings(err, cfg.warnings);
  return cfg;
}

struct SweepValues {
  std::vector<double> values;
};

inline std::vector<double> make_grid(double start, double stop, int points,
                                     const std::string& scale) {
  if (points < 2) throw ConfigError("sweep needs points >= 2");
  if (!(start < stop)) throw ConfigError("sweep needs start < stop");
  if (scale == "log" && !(start > 0.0)) {
    throw ConfigError("log scale needs start > 0");
  }
  std::vector<double> grid(points);
  for (int i = 0; i < points; ++i) {
    const double f = static_cast<double>(i) / (points - 1);
    grid[i] = scale == "log" ? start * std::pow(stop / start, f)
                             : start + (stop - start) * f;
  }
  return grid;
}

/// Analytic coverage with automatic method choice: the exact closed form for
/// a single element, the Gamma approximation otherwise.
inline coverage::CoverageResult analytic_auto(const coverage::CoverageQuery& q) {
  return q.scenario.n_elements == 1 ? coverage::coverage_exact_n1(q)
                                    : coverage::coverage_general(q);
}

inline int cmd_coverage(const std::string& config_path, double threshold_db,
                        const std::string& method, std::ostream& out,
                        std::ostream& err) {
  const ParsedConfig cfg = load_scenario(config_path, err);
  coverage::CoverageQuery q{cfg.scenario, db_to_linear(threshold_db)};
  coverage::CoverageResult res;
  if (method == "exact") {
    res = coverage::coverage_exact_n1(q);
  } else if (method == "gamma") {
    res = coverage::coverage_general(q);
  } else {
    res = analytic_auto(q);
  }
  if (!res.note.empty()) err << "warning: " << res.note << "\n";
  emit_scenario_comments(out, cfg);
  out << "# threshold_db = " << format_exact(threshold_db) << "\n";
  out << "# method = " << coverage::method_name(res.method) << "\n";
  out << csv_header_analytic << "\n";
  out << "threshold_db," << format_csv(threshold_db) << ","
      << format_csv(res.probability) << "\n";
  return 0;
}

inline int cmd_sweep(const std::string& config_path,
                     const std::string& variable, double start, double stop,
                     int points, const std::string& scale, double threshold_db,
                     bool with_mc, long long trials, std::uint64_t seed,
                     int workers, std::ostream& out, std::ostream& err) {
  const ParsedConfig cfg = load_scenario(config_path, err);
  const auto grid = make_grid(start, stop, points, scale);

  emit_scenario_comments(out, cfg);
  out << "# sweep_variable = " << variable << "\n";
  if (variable != "threshold_db") {
    out << "# threshold_db = " << format_exact(threshold_db) << "\n";
  }
  if (with_mc) {
    out << "# trials = " << trials << "\n";
    out << "# seed = " << seed << "\n";
  }
  out << (with_mc ? csv_header_mc : csv_header_analytic) << "\n";

  for (const double v : grid) {
    coverage::CoverageQuery q{cfg.scenario, db_to_linear(threshold_db)};
    if (variable == "threshold_db") {
      q.gamma_th = db_to_linear(v);
    } else if (variable == "n_elements") {
      const long long n = std::llround(v);
      if (n < 0) throw ConfigError("n_elements sweep values must be >= 0");
      q.scenario.n_elements = static_cast<int>(n);
    } else if (variable == "element_side") {
      if (!(v > 0.0)) throw ConfigError("element_side sweep values must be > 0");
      q.scenario.element_side = v;
    } else if (variable == "sigma") {
      if (!(v > 0.0)) throw ConfigError("sigma sweep values must be > 0");
      q.scenario.sigma1 = v;
      q.scenario.sigma2 = v;
    } else if (variable == "theta_s") {
      q.scenario.theta_s = deg_to_rad(v);
    } else {
      throw ConfigError("unknown sweep variable '" + variable + "'");
    }
    const coverage::CoverageResult res = coverage::coverage_general(q);
    out << variable << "," << format_csv(v) << ","
        << format_csv(res.probability);
    if (with_mc) {
      const mc::SimReport rep = mc::simulate_coverage(q, {trials, seed, workers});
      out << "," << format_csv(rep.estimate) << ","
          << format_csv(rep.half_width_95);
    }
    out << "\n";
  }
  return 0;
}

inline int cmd_optimal_n(const std::string& config_path, double threshold_db,
                         double epsilon, int cap, std::ostream& out,
                         std::ostream& err) {
  const ParsedConfig cfg = load_scenario(config_path, err);
  const double gamma_th = db_to_linear(threshold_db);
  const int n_star = coverage::optimal_elements(cfg.scenario, gamma_th,
                                                epsilon, cap);
  coverage::CoverageQuery q{cfg.scenario, gamma_th};
  q.scenario.n_elements = n_star;
  const coverage::CoverageResult res = coverage::coverage_general(q);

  emit_scenario_comments(out, cfg);
  out << "# threshold_db = " << format_exact(threshold_db) << "\n";
  out << "# epsilon = " << format_exact(epsilon) << "\n";
  out << csv_header_analytic << "\n";
  out << "n_star," << n_star << "," << format_csv(res.probability) << "\n";
  return 0;
}

inline int cmd_validate_mc(const std::string& config_path, double start_db,
                           double stop_db, int points, long long trials,
                           std::uint64_t seed, int workers, std::ostream& out,
                           std::ostream& err) {
  const ParsedConfig cfg = load_scenario(config_path, err);
  const auto grid = make_grid(start_db, stop_db, points, "linear");

  emit_scenario_comments(out, cfg);
  out << "# trials = " << trials << "\n";
  out << "# seed = " << seed << "\n";
  out << csv_header_mc << "\n";
  for (const double db : grid) {
    const coverage::CoverageQuery q{cfg.scenario, db_to_linear(db)};
    const coverage::CoverageResult res = analytic_auto(q);
    const mc::SimReport rep = mc::simulate_coverage(q, {trials, seed, workers});
    out << "threshold_db," << format_csv(db) << ","
        << format_csv(res.probability) << "," << format_csv(rep.estimate)
        << "," << format_csv(rep.half_width_95) << "\n";
  }
  return 0;
}

inline int cmd_ks_test(double sigma, long long trials, std::uint64_t seed,
                       std::ostream& out, std::ostream& err) {
  if (!(sigma > 0.0)) throw ConfigError("ks-test needs sigma > 0");
  if (trials < 1) throw ConfigError("ks-test needs trials >= 1");
  (void)err;

  const dist::RayleighPair pair{sigma, sigma};
  CounterRng rng(seed);
  std::vector<double> samples(static_cast<std::size_t>(trials));
  for (auto& x : samples) x = dist::sample_product(pair, rng);
  const dist::EmpiricalCdf ecdf = mc::empirical_cdf(std::move(samples));

  const dist::GammaParams g = dist::moment_match(pair);
  const double d_ks = dist::ks_statistic(ecdf, [&g](double t) {
    return t <= 0.0 ? 0.0 : specfun::reg_gamma_p(g.shape, t / g.scale);
  });

  out << "# sigma = " << format_exact(sigma) << "\n";
  out << "# gamma_shape = " << format_exact(g.shape) << "\n";
  out << "# gamma_scale = " << format_exact(g.scale) << "\n";
  out << "sigma,trials,seed,d_ks\n";
  out << format_csv(sigma) << "," << trials << "," << seed << ","
      << format_csv(d_ks) << "\n";
  return 0;
}

}  // namespace detail

/// Runs one CLI invocation. `args` holds the arguments in natural order,
/// without the program name. Returns the process exit code.
inline int run(std::vector<std::string> args, std::ostream& out,
               std::ostream& err) {
  CLI::App app{"Coverage probability analysis for reflecting-surface links"};
  app.require_subcommand(1);

  std::string config_path;
  double threshold_db = 0.0;
  std::string method = "auto";
  std::string variable;
  double start = 0.0;
  double stop = 0.0;
  int points = 20;
  std::string scale = "linear";
  bool with_mc = false;
  long long trials = 100000;
  std::uint64_t seed = 0;
  int workers = 1;
  double epsilon = 1e-3;
  int cap = 1'000'000;
  double sigma = 1.0;
  double start_db = -30.0;
  double stop_db = 30.0;

  auto* cov = app.add_subcommand(
      "coverage", "Analytic coverage probability for one threshold");
  cov->add_option("--config", config_path, "Scenario config file");
  cov->add_option("--threshold-db", threshold_db, "SNR threshold in dB")
      ->required();
  cov->add_option("--method", method, "exact | gamma | auto")
      ->check(CLI::IsMember({"exact", "gamma", "auto"}));

  auto* sweep = app.add_subcommand(
      "sweep", "Coverage probability along one swept variable (CSV)");
  sweep->add_option("--config", config_path, "Scenario config file");
  sweep
      ->add_option("--variable", variable,
                   "threshold_db | n_elements | element_side | sigma | theta_s")
      ->required()
      ->check(CLI::IsMember({"threshold_db", "n_elements", "element_side",
                             "sigma", "theta_s"}));
  sweep->add_option("--start", start, "First swept value")->required();
  sweep->add_option("--stop", stop, "Last swept value")->required();
  sweep->add_option("--points", points, "Grid size (>= 2)")->required();
  sweep->add_option("--scale", scale, "linear | log")
      ->check(CLI::IsMember({"linear", "log"}));
  sweep->add_option("--threshold-db", threshold_db,
                    "SNR threshold in dB (for non-threshold sweeps)");
  sweep->add_flag("--mc", with_mc, "Append Monte Carlo columns");
  sweep->add_option("--trials", trials, "Monte Carlo trials");
  sweep->add_option("--seed", seed, "Monte Carlo seed");
  sweep->add_option("--workers", workers, "Monte Carlo worker threads");

  auto* opt = app.add_subcommand(
      "optimal-n", "Smallest element count reaching 1 - epsilon coverage");
  opt->add_option("--config", config_path, "Scenario config file");
  opt->add_option("--threshold-db", threshold_db, "SNR threshold in dB")
      ->required();
  opt->add_option("--epsilon", epsilon, "Coverage slack (default 1e-3)");
  opt->add_option("--cap", cap, "Search cap on N");

  auto* vmc = app.add_subcommand(
      "validate-mc", "Analytic vs Monte Carlo coverage over a threshold sweep");
  vmc->add_option("--config", config_path, "Scenario config file");
  vmc->add_option("--start-db", start_db, "First threshold in dB");
  vmc->add_option("--stop-db", stop_db, "Last threshold in dB");
  vmc->add_option("--points", points, "Grid size (>= 2)");
  vmc->add_option("--trials", trials, "Monte Carlo trials");
  vmc->add_option("--seed", seed, "Monte Carlo seed");
  vmc->add_option("--workers", workers, "Monte Carlo worker threads");

  auto* ks = app.add_subcommand(
      "ks-test", "Kolmogorov-Smirnov fit of the Gamma approximation");
  ks->add_option("--sigma", sigma, "Rayleigh coefficient for both hops");
  ks->add_option("--trials", trials, "Sample size");
  ks->add_option("--seed", seed, "Sample seed");

  try {
    std::reverse(args.begin(), args.end());
    app.parse(std::move(args));
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  try {
    if (cov->parsed()) {
      return detail::cmd_coverage(config_path, threshold_db, method, out, err);
    }
    if (sweep->parsed()) {
      return detail::cmd_sweep(config_path, variable, start, stop, points,
                               scale, threshold_db, with_mc, trials, seed,
                               workers, out, err);
    }
    if (opt->parsed()) {
      return detail::cmd_optimal_n(config_path, threshold_db, epsilon, cap,
                                   out, err);
    }
    if (vmc->parsed()) {
      return detail::cmd_validate_mc(config_path, start_db, stop_db, points,
                                     trials, seed, workers, out, err);
    }
    if (ks->parsed()) {
      return detail::cmd_ks_test(sigma, trials, seed, out, err);
    }
    err << "error: no subcommand selected\n";
    return 1;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::runtime_error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

/// argv-style entry point writing to the standard streams.
inline int run(int argc, const char* const* argv, std::ostream& out,
               std::ostream& err) {
  std::vector<std::string> args;
  args.reserve(argc > 0 ? argc - 1 : 0);
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(std::move(args), out, err);
}

}  // namespace irscov::cli
