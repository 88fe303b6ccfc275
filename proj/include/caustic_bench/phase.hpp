#pragma once

// Phase functions Phi(x, alpha): polynomials with rational coefficients over
// base variables x1..x_nx and angular variables a1..a_nalpha, with exact
// differentiation.  Includes the A_{m+1} model family, the caustic-distance
// function (determinant of the angular Hessian), stationary-point search, and
// caustic classification (corank, index m, order kappa, thresholds p_m/q_m).
//
// All operations are pure functions of their inputs; concurrent use is safe.

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "caustic_bench/poly.hpp"
#include "caustic_bench/rational.hpp"

namespace caustics {

class PhaseFunction {
 public:
  PhaseFunction(Poly phi, int n_x, int n_alpha, double box_half_width,
                int max_derivative_order, std::optional<int> model_m = std::nullopt);

  int n_x() const { return n_x_; }
  int n_alpha() const { return n_alpha_; }
  const Poly& poly() const { return phi_; }
  std::optional<int> model_index() const { return model_m_; }
  int max_derivative_order() const { return max_derivative_order_; }
  double box_half_width() const { return box_half_width_; }

  bool in_domain(std::span<const double> x, std::span<const double> alpha) const;

  double eval(std::span<const double> x, std::span<const double> alpha) const;
  double eval(std::span<const double> x, double alpha) const;

  // Unchecked derivative polynomial; orders beyond the total degree give 0.
  Poly derivative_poly(std::span<const int> multi_index) const;

  // Restriction alpha -> Phi(x, alpha) for n_alpha == 1 phases (and their
  // alpha-derivatives), used heavily by quadrature and root search.
  Poly1 alpha_profile(std::span<const double> x, int alpha_order = 0) const;

 private:
  std::vector<double> pack(std::span<const double> x, std::span<const double> alpha) const;

  Poly phi_;
  int n_x_;
  int n_alpha_;
  double box_half_width_;
  int max_derivative_order_;
  std::optional<int> model_m_;
};

// The A_{m+1} model phase: Phi = a^{m+2} + x1*a^m + ... + x_m*a + x_{m+1},
// n_x = m+1, n_alpha = 1, domain [-2,2]^{m+2}.  Throws for m < 1.
PhaseFunction make_model_phase(int m);

// Phase from the plain-text grammar ("a^3 + x1*a + x2").  Parsed phases get a
// wide base-variable box ([-16,16]) so off-domain experiments stay legal.
PhaseFunction make_phase_from_expr(const std::string& expr);

// Exact partial derivative evaluated at a point.  Errors when the total order
// exceeds the phase's cap or the point leaves the domain.
double eval_derivative(const PhaseFunction& phase, std::span<const double> x,
                       std::span<const double> alpha, std::span<const int> multi_index);

// Distance to the caustic set: det of the angular Hessian of Phi at (x, alpha).
double caustic_distance(const PhaseFunction& phase, std::span<const double> x,
                        std::span<const double> alpha);

// The caustic-distance function as a polynomial in (x, alpha).
Poly caustic_distance_poly(const PhaseFunction& phase);

struct StationaryPoint {
  double alpha;
  // Order of the first non-vanishing alpha-derivative of Phi'_alpha at the
  // root; 1 for simple stationary points.
  int multiplicity;
};

// All real roots of Phi'_alpha(x, .) in [lo, hi], sorted ascending.
// Requires n_alpha == 1.
std::vector<StationaryPoint> find_stationary_points(const PhaseFunction& phase,
                                                    std::span<const double> x, double lo,
                                                    double hi);

struct CausticProfile {
  int corank = 0;
  std::optional<int> index_m;
  Rational kappa = Rational(0);           // 1/2 - 1/(m+2), 0 when nondegenerate
  std::optional<Rational> q_m;            // 2 + 2/m
  std::optional<Rational> p_m;            // 2 - 2/(m+2), conjugate of q_m
  std::vector<double> x;
  std::vector<double> alpha;
};

struct ClassifyTolerances {
  double stationary = 1e-10;   // |Phi'_alpha| below this counts as critical
  double on_caustic = 1e-10;   // |D| below this counts as on the caustic set
  double nonvanishing = 1e-8;  // |V^j D| above this counts as nonzero
  int m_max = 6;
};

// Classification at a stationary point: corank 0 when D != 0, otherwise
// corank 1 with index m = smallest j such that d^j/d alpha^j D != 0 (the fiber
// field is fixed to d/d alpha1).  Throws when the point is not stationary or
// no j <= m_max qualifies.
CausticProfile classify_caustic(const PhaseFunction& phase, std::span<const double> x,
                                std::span<const double> alpha,
                                const ClassifyTolerances& tol = {});

// Exact rational thresholds for index m: kappa, q_m, p_m.
Rational kappa_of_index(int m);
Rational q_m_of_index(int m);
Rational p_m_of_index(int m);

}  // namespace caustics
