#pragma once

// Oscillation-aware adaptive quadrature.  Panels refine on the Gauss-Kronrod
// 7-15 error estimate and on an oscillation budget: a panel is never accepted
// while the phase varies by more than 2*pi/8 across it (at least 8 panels per
// period), which keeps the error estimates trustworthy on oscillatory
// integrands.

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <stdexcept>

namespace caustics {

struct QuadratureOptions {
  double tol = 1e-8;                  // absolute error target for the whole integral
  std::size_t max_panels = std::size_t{1} << 22;
  double max_phase_per_panel = 0.7853981633974483;  // 2*pi/8
};

struct QuadratureResult {
  std::complex<double> value;
  double abs_error_estimate = 0.0;
  std::size_t panels_used = 0;
  bool tolerance_met = true;
};

class QuadratureBudgetError : public std::runtime_error {
 public:
  QuadratureBudgetError(QuadratureResult partial_result)
      : std::runtime_error("quadrature panel budget exhausted"), partial(partial_result) {}
  QuadratureResult partial;
};

// Integrates f over [a, b].  `total_phase` reports the accumulated phase (in
// radians) at a point and drives the oscillation budget; pass nullptr for
// smooth integrands.  `presplit` lists interior points (stationary points)
// where the initial partition is cut.
QuadratureResult integrate_gk(const std::function<std::complex<double>(double)>& f,
                              const std::function<double(double)>& total_phase, double a,
                              double b, const QuadratureOptions& opt,
                              std::span<const double> presplit = {});

}  // namespace caustics
