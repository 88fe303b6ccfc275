#include "caustic_bench/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

namespace caustics {

namespace {

// Gauss-Kronrod 7-15 abscissae (positive half) and weights.
constexpr std::array<double, 8> kXgk = {
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728};
constexpr std::array<double, 4> kWg = {0.129484966168870, 0.279705391489277,
                                       0.381830050505119, 0.417959183673469};

struct PanelEval {
  std::complex<double> integral;  // Kronrod 15
  double error;
};

PanelEval gk15(const std::function<std::complex<double>(double)>& f, double a, double b) {
  double mid = 0.5 * (a + b);
  double half = 0.5 * (b - a);

  std::array<std::complex<double>, 15> fv;
  fv[7] = f(mid);
  for (int i = 0; i < 7; ++i) {
    double dx = half * kXgk[i];
    fv[i] = f(mid - dx);
    fv[14 - i] = f(mid + dx);
  }

  std::complex<double> resk = kWgk[7] * fv[7];
  double resabs = std::abs(resk);
  for (int i = 0; i < 7; ++i) {
    resk += kWgk[i] * (fv[i] + fv[14 - i]);
    resabs += kWgk[i] * (std::abs(fv[i]) + std::abs(fv[14 - i]));
  }
  std::complex<double> resg = kWg[3] * fv[7];
  for (int i = 0; i < 3; ++i) {
    resg += kWg[i] * (fv[2 * i + 1] + fv[13 - 2 * i]);
  }

  std::complex<double> reskh = resk * 0.5;
  double resasc = kWgk[7] * std::abs(fv[7] - reskh);
  for (int i = 0; i < 7; ++i) {
    resasc += kWgk[i] * (std::abs(fv[i] - reskh) + std::abs(fv[14 - i] - reskh));
  }
  resasc *= half;
  resabs *= half;

  double err = std::abs(resk - resg) * half;
  if (resasc != 0.0 && err != 0.0) {
    err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  }
  double round_floor = 50.0 * 1.1e-16 * resabs;
  err = std::max(err, round_floor);
  return {resk * half, err};
}

}  // namespace

QuadratureResult integrate_gk(const std::function<std::complex<double>(double)>& f,
                              const std::function<double(double)>& total_phase, double a,
                              double b, const QuadratureOptions& opt,
                              std::span<const double> presplit) {
  if (!(b > a)) return {{0.0, 0.0}, 0.0, 0, true};
  if (opt.tol < 1e-12) throw std::domain_error("integrate_gk: tol must be >= 1e-12");

  std::vector<double> cuts;
  cuts.push_back(a);
  for (double s : presplit) {
    if (s > a && s < b) cuts.push_back(s);
  }
  cuts.push_back(b);
  std::sort(cuts.begin(), cuts.end());

  struct Panel {
    double a, b;
  };
  std::vector<Panel> stack;
  for (std::size_t i = cuts.size(); i-- > 1;) stack.push_back({cuts[i - 1], cuts[i]});

  const double total_len = b - a;
  QuadratureResult acc;
  while (!stack.empty()) {
    Panel p = stack.back();
    stack.pop_back();
    if (acc.panels_used >= opt.max_panels) {
      acc.tolerance_met = false;
      acc.abs_error_estimate = std::max(acc.abs_error_estimate, 1.0);
      throw QuadratureBudgetError(acc);
    }
    ++acc.panels_used;

    bool oscillation_ok = true;
    if (total_phase) {
      double mid = 0.5 * (p.a + p.b);
      double variation = std::abs(total_phase(mid) - total_phase(p.a)) +
                         std::abs(total_phase(p.b) - total_phase(mid));
      oscillation_ok = variation <= opt.max_phase_per_panel;
    }

    PanelEval ev = gk15(f, p.a, p.b);
    double local_budget = opt.tol * (p.b - p.a) / total_len;
    bool error_ok = ev.error <= local_budget;
    double width_floor = 1e-15 * std::max(1.0, std::max(std::abs(p.a), std::abs(p.b)));
    if ((error_ok && oscillation_ok) || (p.b - p.a) < width_floor) {
      acc.value += ev.integral;
      acc.abs_error_estimate += ev.error;
      continue;
    }
    double m = 0.5 * (p.a + p.b);
    stack.push_back({m, p.b});
    stack.push_back({p.a, m});
  }
  acc.tolerance_met = acc.abs_error_estimate <= opt.tol;
  return acc;
}

}  // namespace caustics
