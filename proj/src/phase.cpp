#include "caustic_bench/phase.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "caustic_bench/roots.hpp"

namespace caustics {

PhaseFunction::PhaseFunction(Poly phi, int n_x, int n_alpha, double box_half_width,
                             int max_derivative_order, std::optional<int> model_m)
    : phi_(std::move(phi)),
      n_x_(n_x),
      n_alpha_(n_alpha),
      box_half_width_(box_half_width),
      max_derivative_order_(max_derivative_order),
      model_m_(model_m) {
  if (phi_.nvars() != n_x_ + n_alpha_) throw std::domain_error("phase arity mismatch");
  if (n_alpha_ < 1) throw std::domain_error("phase needs at least one angular variable");
}

std::vector<double> PhaseFunction::pack(std::span<const double> x,
                                        std::span<const double> alpha) const {
  if (static_cast<int>(x.size()) != n_x_ || static_cast<int>(alpha.size()) != n_alpha_) {
    throw std::domain_error("phase point dimension mismatch");
  }
  std::vector<double> p(n_x_ + n_alpha_);
  std::copy(x.begin(), x.end(), p.begin());
  std::copy(alpha.begin(), alpha.end(), p.begin() + n_x_);
  return p;
}

bool PhaseFunction::in_domain(std::span<const double> x, std::span<const double> alpha) const {
  for (double v : x) {
    if (std::abs(v) > box_half_width_) return false;
  }
  for (double v : alpha) {
    if (std::abs(v) > 2.0) return false;
  }
  return true;
}

double PhaseFunction::eval(std::span<const double> x, std::span<const double> alpha) const {
  auto p = pack(x, alpha);
  return phi_.eval(p);
}

double PhaseFunction::eval(std::span<const double> x, double alpha) const {
  return eval(x, std::span<const double>(&alpha, 1));
}

Poly PhaseFunction::derivative_poly(std::span<const int> multi_index) const {
  if (static_cast<int>(multi_index.size()) != n_x_ + n_alpha_) {
    throw std::domain_error("multi-index dimension mismatch");
  }
  Poly d = phi_;
  for (int v = 0; v < n_x_ + n_alpha_; ++v) {
    for (int k = 0; k < multi_index[v]; ++k) d = d.derivative(v);
  }
  return d;
}

Poly1 PhaseFunction::alpha_profile(std::span<const double> x, int alpha_order) const {
  if (n_alpha_ != 1) throw std::domain_error("alpha_profile needs n_alpha == 1");
  Poly d = phi_;
  for (int k = 0; k < alpha_order; ++k) d = d.derivative(n_x_);
  std::vector<double> p(n_x_ + 1, 0.0);
  std::copy(x.begin(), x.end(), p.begin());
  return d.restrict_to_var(n_x_, p);
}

PhaseFunction make_model_phase(int m) {
  if (m < 1) throw std::domain_error("model phase needs m >= 1");
  int n_x = m + 1;
  int nvars = n_x + 1;
  int a = n_x;  // index of the angular variable
  Poly phi = Poly::variable(nvars, a).pow(m + 2);
  for (int i = 1; i <= m; ++i) {
    phi += Poly::variable(nvars, i - 1) * Poly::variable(nvars, a).pow(m + 1 - i);
  }
  phi += Poly::variable(nvars, n_x - 1);
  return PhaseFunction(std::move(phi), n_x, 1, 2.0, m + 3, m);
}

PhaseFunction make_phase_from_expr(const std::string& expr) {
  ParsedPhaseExpr parsed = parse_phase_expr(expr);
  int cap = std::max(parsed.poly.total_degree() + 1, 4);
  return PhaseFunction(std::move(parsed.poly), parsed.n_x, parsed.n_alpha, 16.0, cap);
}

double eval_derivative(const PhaseFunction& phase, std::span<const double> x,
                       std::span<const double> alpha, std::span<const int> multi_index) {
  int total = 0;
  for (int k : multi_index) {
    if (k < 0) throw std::domain_error("negative derivative order");
    total += k;
  }
  if (total > phase.max_derivative_order()) {
    throw std::domain_error("derivative order exceeds the phase's supported cap");
  }
  if (!phase.in_domain(x, alpha)) throw std::domain_error("point outside phase domain");
  Poly d = phase.derivative_poly(multi_index);
  std::vector<double> p(x.begin(), x.end());
  p.insert(p.end(), alpha.begin(), alpha.end());
  return d.eval(p);
}

Poly caustic_distance_poly(const PhaseFunction& phase) {
  int k = phase.n_alpha();
  int n = phase.n_x();
  auto second = [&](int i, int j) {
    return phase.poly().derivative(n + i).derivative(n + j);
  };
  if (k == 1) return second(0, 0);
  if (k == 2) return second(0, 0) * second(1, 1) - second(0, 1) * second(0, 1);
  if (k == 3) {
    Poly det(phase.poly().nvars());
    det += second(0, 0) * (second(1, 1) * second(2, 2) - second(1, 2) * second(1, 2));
    det -= second(0, 1) * (second(0, 1) * second(2, 2) - second(1, 2) * second(0, 2));
    det += second(0, 2) * (second(0, 1) * second(1, 2) - second(1, 1) * second(0, 2));
    return det;
  }
  throw std::domain_error("caustic distance supports up to 3 angular variables");
}

double caustic_distance(const PhaseFunction& phase, std::span<const double> x,
                        std::span<const double> alpha) {
  if (static_cast<int>(x.size()) != phase.n_x() ||
      static_cast<int>(alpha.size()) != phase.n_alpha()) {
    throw std::domain_error("phase point dimension mismatch");
  }
  std::vector<double> p(x.begin(), x.end());
  p.insert(p.end(), alpha.begin(), alpha.end());
  return caustic_distance_poly(phase).eval(p);
}

std::vector<StationaryPoint> find_stationary_points(const PhaseFunction& phase,
                                                    std::span<const double> x, double lo,
                                                    double hi) {
  if (phase.n_alpha() != 1) throw std::domain_error("stationary-point search needs n_alpha == 1");
  Poly1 dphi = phase.alpha_profile(x, 1);
  std::vector<StationaryPoint> out;
  for (double r : real_roots(dphi, lo, hi)) {
    // Multiplicity: first alpha-derivative of Phi'_alpha that does not vanish.
    int mult = 1;
    Poly1 d = dphi.derivative();
    while (!d.is_zero()) {
      double mag = 0.0;
      for (double c : d.coeffs()) mag = std::max(mag, std::abs(c));
      if (std::abs(d.eval(r)) > 1e-8 * std::max(1.0, mag)) break;
      ++mult;
      d = d.derivative();
    }
    out.push_back({r, mult});
  }
  return out;
}

Rational kappa_of_index(int m) {
  return Rational(1, 2) - Rational(1, m + 2);
}

Rational q_m_of_index(int m) {
  return Rational(2) + Rational(2, m);
}

Rational p_m_of_index(int m) {
  return Rational(2) - Rational(2, m + 2);
}

CausticProfile classify_caustic(const PhaseFunction& phase, std::span<const double> x,
                                std::span<const double> alpha, const ClassifyTolerances& tol) {
  std::vector<double> p(x.begin(), x.end());
  p.insert(p.end(), alpha.begin(), alpha.end());
  for (int i = 0; i < phase.n_alpha(); ++i) {
    double g = phase.poly().derivative(phase.n_x() + i).eval(p);
    if (std::abs(g) > tol.stationary) {
      throw std::invalid_argument("classify_caustic: point is not stationary in alpha");
    }
  }

  CausticProfile prof;
  prof.x.assign(x.begin(), x.end());
  prof.alpha.assign(alpha.begin(), alpha.end());

  Poly dist = caustic_distance_poly(phase);
  double d0 = dist.eval(p);
  if (std::abs(d0) > tol.on_caustic) {
    prof.corank = 0;
    return prof;
  }

  prof.corank = 1;
  Poly dj = dist;
  for (int j = 1; j <= tol.m_max; ++j) {
    dj = dj.derivative(phase.n_x());  // fiber field fixed to d/d alpha1
    if (std::abs(dj.eval(p)) > tol.nonvanishing) {
      prof.index_m = j;
      prof.kappa = kappa_of_index(j);
      prof.q_m = q_m_of_index(j);
      prof.p_m = p_m_of_index(j);
      return prof;
    }
  }
  throw std::domain_error("classify_caustic: degenerate beyond supported index");
}

}  // namespace caustics
