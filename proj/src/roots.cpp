#include "caustic_bench/roots.hpp"

#include <algorithm>
#include <cmath>

namespace caustics {

namespace {

// Running bound on the evaluation roundoff: sum_k |c_k t^k| * machine factor.
double eval_noise(const Poly1& p, double t) {
  double mag = 0.0;
  double tp = 1.0;
  for (double c : p.coeffs()) {
    mag += std::abs(c * tp);
    tp *= t;
  }
  return 8.0 * (p.degree() + 1) * 1e-16 * std::max(1.0, mag);
}

double bisect(const Poly1& p, double a, double b, double fa) {
  for (int it = 0; it < 200; ++it) {
    double m = 0.5 * (a + b);
    if (m == a || m == b) break;
    double fm = p.eval(m);
    if (fm == 0.0) return m;
    if ((fa < 0) == (fm < 0)) {
      a = m;
      fa = fm;
    } else {
      b = m;
    }
    if (b - a < 1e-14 * std::max(1.0, std::abs(m))) break;
  }
  double r = 0.5 * (a + b);
  // Guarded Newton polish.
  Poly1 dp = p.derivative();
  for (int it = 0; it < 4; ++it) {
    double d = dp.eval(r);
    if (d == 0.0) break;
    double step = p.eval(r) / d;
    double next = r - step;
    if (next < a || next > b) break;
    r = next;
  }
  return r;
}

void roots_impl(const Poly1& p, double lo, double hi, std::vector<double>& out) {
  int deg = p.degree();
  if (deg <= 0) return;
  if (deg == 1) {
    double r = -p.coeffs()[0] / p.coeffs()[1];
    if (r >= lo && r <= hi) out.push_back(r);
    return;
  }

  std::vector<double> crit;
  roots_impl(p.derivative(), lo, hi, crit);
  std::sort(crit.begin(), crit.end());

  std::vector<double> pts;
  pts.push_back(lo);
  for (double c : crit) {
    if (c > pts.back()) pts.push_back(c);
  }
  if (hi > pts.back()) pts.push_back(hi);

  // Touch roots at critical points (even multiplicity, no sign change).
  for (double c : pts) {
    if (std::abs(p.eval(c)) <= eval_noise(p, c)) out.push_back(c);
  }
  // Sign-change roots between consecutive monotone nodes.
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    double a = pts[i], b = pts[i + 1];
    double fa = p.eval(a), fb = p.eval(b);
    if (std::abs(fa) <= eval_noise(p, a) || std::abs(fb) <= eval_noise(p, b)) continue;
    if ((fa < 0) != (fb < 0)) out.push_back(bisect(p, a, b, fa));
  }
}

}  // namespace

std::vector<double> real_roots(const Poly1& p, double lo, double hi) {
  std::vector<double> out;
  roots_impl(p, lo, hi, out);
  std::sort(out.begin(), out.end());
  std::vector<double> dedup;
  for (double r : out) {
    if (dedup.empty() || r - dedup.back() > 1e-9 * std::max(1.0, std::abs(r))) {
      dedup.push_back(r);
    }
  }
  return dedup;
}

}  // namespace caustics
