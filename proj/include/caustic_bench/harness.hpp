#pragma once

// Scenario-driven sweeps: ladders in tau / sigma / lambda / gap, log-log
// exponent fits, and pass/fail verification against the registered exact
// predictions.  Every built-in scenario carries exactly one predicted
// exponent and a citation id naming the scaling law it measures.

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "caustic_bench/rational.hpp"

namespace caustics {

struct SweepConfig {
  std::string scenario;
  std::string parameter;                   // tau | sigma | lambda | gap | r
  int ladder_min_log2 = 0;                 // inclusive, log2 of the parameter
  int ladder_max_log2 = 0;
  std::map<std::string, double> fixed;     // q, m, lambda_log2, tau_log2, ...
  double tolerance = 0.0;                  // 0 -> registry default
  std::uint64_t seed = 42;
};

struct SweepSample {
  double param_log2 = 0.0;
  double value = 0.0;          // measured scalar
  double abs_value = 0.0;
  double err_estimate = 0.0;
};

struct FitResult {
  double slope = 0.0;
  double intercept = 0.0;      // log2 scale
  double r_squared = 1.0;
  double residual_max = 0.0;
  std::vector<std::pair<double, double>> samples;  // (log2 param, log2 value)
  bool retrenched = false;
};

// Ordinary least squares on (log2 x, log2 y).  Throws when fewer than 3
// samples, on duplicate abscissae, or on y <= 0.
FitResult fit_exponent(std::span<const std::pair<double, double>> samples);

struct ScenarioInfo {
  std::string id;
  std::string parameter;
  int default_min_log2 = 0;
  int default_max_log2 = 0;
  double tolerance = 0.0;
  std::string citation;
  Rational predicted;
};

std::vector<std::string> scenario_ids();
ScenarioInfo scenario_info(const std::string& id,
                           const std::map<std::string, double>& fixed = {});

struct SweepOutcome {
  std::vector<SweepSample> rows;
  FitResult fit;
  bool extras_pass = true;
  std::vector<std::string> notes;
};

// Measures the scenario over its ladder and fits the exponent.  When the
// first fit has r^2 < 0.98 the smallest ladder point is dropped and the fit
// retried once (asymptotic regimes need large parameters).
SweepOutcome run_sweep(const SweepConfig& config);

struct Report {
  std::string scenario;
  Rational predicted;
  FitResult fitted;
  bool pass = false;
  double runtime_seconds = 0.0;
  std::string citation;
  std::uint64_t seed = 0;
  std::vector<std::string> notes;
};

// pass: |slope - predicted| <= tolerance, the fit-quality gate (r^2 >= 0.98
// for sloped targets, bounded residuals for flat ones), and the scenario's
// own pointwise/shape checks.
Report verify(const SweepConfig& config);

// The default configuration of every scenario instance run by
// `verify --suite all` (fold-lq at q = 3 and q = 8, vanishing at m = 1..3,
// and so on).
std::vector<SweepConfig> suite_configs(const std::string& suite, std::uint64_t seed);

// Serialization.  CSV: header param_log2,value,abs_value,err_estimate with
// 17-significant-digit decimals and LF endings.  JSON: one object per report
// with scenario/predicted/fitted/r2/pass/citation/seed/runtime_s.
std::string sweep_csv(std::span<const SweepSample> rows);
std::string report_json(const Report& report);
std::string reports_json(std::span<const Report> reports);

// Plain "key = value" configuration files, '#' comments.  Values mirror CLI
// flags; flags given on the command line override file entries.
std::map<std::string, std::string> parse_config_file(const std::string& path);

// Closest rational with denominator <= max_den (for q values arriving as
// doubles through config files).
Rational rational_from_double(double v, std::int64_t max_den = 4096);

}  // namespace caustics
