#pragma once

// Empirical norm and measure estimators: sup / L^q norms on grids, the
// L^1 -> L^2 piece proxy (sup over y of the x-row L^2 norm), sublevel-set
// measures by grid counting with a Richardson consistency gate, the
// vanishing integral, and Hardy atoms with their transfer factor.
//
// Grid evaluations are reduced in sorted index order, so results are
// run-to-run identical even when the counting loops run on several threads
// (see CAUSTIC_BENCH_THREADS).

#include <complex>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "caustic_bench/bump.hpp"
#include "caustic_bench/dyadic.hpp"
#include "caustic_bench/oscillatory.hpp"
#include "caustic_bench/phase.hpp"
#include "caustic_bench/poly.hpp"

namespace caustics {

struct GridSpec {
  double lo = 0.0;
  double hi = 1.0;
  double h = 0.1;
  int refinement_depth = 1;
};

struct NormEstimate {
  double value = 0.0;
  GridSpec grid;
  std::string method;  // "sup-grid" | "lq-grid" | "ff-star"
};

// Max |f| over the grid nodes, with one local refinement pass (spacing h/8)
// around the top-3 grid maxima.
NormEstimate sup_norm(const std::function<std::complex<double>(double)>& f,
                      const GridSpec& grid);

// Midpoint-rule L^q norm; q = infinity dispatches to sup_norm.
NormEstimate lq_norm(const std::function<std::complex<double>(double)>& f, const GridSpec& grid,
                     double q);

// L^1 -> L^2 proxy for a piece kernel: sup over y-shifts of the L^2(x) norm
// of K(., y) over the product grid (slope coordinate x_m, level coordinate
// x_{m+1}; remaining base coordinates frozen at 0).  Requires a phase whose
// last base variable enters additively (the model family does).
struct PieceL2Grid {
  GridSpec slope;               // window in x_m
  GridSpec level;               // window in x_{m+1}
  std::vector<double> y_shifts{0.0};
};
NormEstimate l1_l2_piece_proxy(const PhaseFunction& phase, const DyadicIndex& index,
                               const PieceL2Grid& grid, const BumpPair& bumps);

// Lebesgue measure of {alpha in [lo,hi] : |f(alpha)-gamma| <= 1/lambda,
// |f''(alpha)| >= sigma} by uniform counting at spacing min(1e-5, 1/(100
// lambda)), cross-checked at half spacing (2% agreement gate).
double sublevel_measure(const Poly1& f, double lambda, double sigma, double gamma, double lo,
                        double hi);

// One pass per lambda over the counting grid, all (gamma, sigma) cells at
// once; values indexed [gamma_index * n_sigma + sigma_index].  Matches
// sublevel_measure cell by cell.
std::vector<double> sublevel_measures_batch(const Poly1& f, double lambda,
                                            std::span<const double> sigmas,
                                            std::span<const double> gammas, double lo,
                                            double hi);

// int beta(f(alpha)/sigma) dalpha over [lo, hi], restricted to the exact
// cutoff support (root isolation), adaptive quadrature at tol 1e-10.
double vanishing_integral(const Poly1& f, double sigma, const BumpPair& bumps, double lo,
                          double hi);

// A local Hardy atom: mean zero, sup <= r^{-n}, L^1 <= 1, supported in the
// cube of side r.  Realized as a normalized difference of two shifted
// mollifier bumps (mean zero holds exactly).
class Atom {
 public:
  Atom(double center, double r, int n);
  double center() const { return center_; }
  double r() const { return r_; }
  int n() const { return n_; }
  double eval(double y) const;
  double support_lo() const { return center_ - r_ / 2.0; }
  double support_hi() const { return center_ + r_ / 2.0; }
  // Fourier transform int e^{-i omega y} a(y) dy by adaptive quadrature.
  std::complex<double> fourier(double omega) const;

 private:
  double center_, r_;
  int n_;
};

Atom make_atom(double center, double r, int n);

// sup over the level grid of |(F_lambda a)(x)| divided by the reference
// sup of |K_lambda| on the same grid: the numerical stand-in for the
// min(lambda r, (lambda r)^{-1}) transfer factor.  The phase's last base
// coordinate must enter additively; the kernel is the plain lambda band
// (no sigma cutoff) with amplitude rho(4 alpha).
double atom_factor(const PhaseFunction& phase, double lambda, const Atom& atom,
                   const GridSpec& level_grid);

// Worker count: CAUSTIC_BENCH_THREADS, 0 or unset = hardware concurrency.
int worker_count();

}  // namespace caustics
