#pragma once

// Oscillatory integrals: u_tau(x) = tau^{k/2} int e^{i tau Phi(x,alpha)} a dalpha,
// the dyadic piece kernels I_{lambda,sigma}(x), a batched profile evaluator
// for phases linear in one base coordinate, and the Airy reference function.

#include <complex>
#include <functional>
#include <span>
#include <vector>

#include "caustic_bench/bump.hpp"
#include "caustic_bench/dyadic.hpp"
#include "caustic_bench/phase.hpp"
#include "caustic_bench/quadrature.hpp"

namespace caustics {

struct OscIntegrand {
  const PhaseFunction* phase = nullptr;          // n_alpha == 1
  std::vector<double> x;                          // base point
  double tau = 1.0;                               // large parameter
  std::function<double(double)> amplitude;        // compactly supported in alpha
  double support_lo = -2.0;
  double support_hi = 2.0;
  double prefactor = 1.0;                         // e.g. tau^{k/2}
};

// Adaptive evaluation of the alpha-integral, pre-split at stationary points.
QuadratureResult integrate_osc(const OscIntegrand& integrand, double tol);

// u_tau with the default rho-bump amplitude (pass {} for amplitude to get it).
std::complex<double> u_tau(const PhaseFunction& phase, std::span<const double> x, double tau,
                           const std::function<double(double)>& amplitude = {});

// Batched u_tau over an x-grid for separable phases
//   Phi(x, alpha) = psi0(alpha) + x * alpha
// (psi0 given as a univariate polynomial).  The profile is computed by
// uniform sampling at a rate that keeps the whole x-spectrum inside one alias
// period, followed by an FFT; the returned grid spacing is
// 2*pi/(tau * (alpha_hi-alpha_lo) * oversample).
struct ProfileSample {
  double x;
  std::complex<double> u;  // includes the tau^{1/2} prefactor
};
std::vector<ProfileSample> u_tau_profile(const Poly1& psi0,
                                         const std::function<double(double)>& amplitude,
                                         double alpha_lo, double alpha_hi, double tau,
                                         double x_lo, double x_hi, int oversample = 4,
                                         double alias_margin = 2.0);

// Cutoff flavor of a piece: signed beta(+-D/sigma), the near-caustic tilde
// rho(D/sigma), or none (the plain frequency band).
enum class PieceCut { Signed, Tilde, None };

struct PieceSpec {
  double lambda = 2.0;
  double sigma = 0.5;       // ignored for PieceCut::None
  PieceCut cut = PieceCut::Signed;
  int sign = +1;
};

// The (lambda, sigma) piece at base point x:
//   I = lambda^{1/2} int_{1/2}^{2} dz int dalpha e^{i lambda z Phi(x,alpha)}
//         amp(alpha) beta(z) cut(Phi''_aa(x,alpha))
// The z-integral uses composite fixed-order Gauss-Legendre with enough panels
// for the z-frequencies present; the alpha-integral is adaptive and
// restricted to the cutoff support.  Default amplitude is rho(alpha).
std::complex<double> piece_kernel(const PhaseFunction& phase, const DyadicIndex& index,
                                  std::span<const double> x, const BumpPair& bumps);
std::complex<double> piece_kernel_at(const PhaseFunction& phase, const PieceSpec& spec,
                                     std::span<const double> x, const BumpPair& bumps,
                                     const std::function<double(double)>& amplitude = {});

// The z-quadrature profile of a piece: nodes z_k, weights w_k (beta(z)
// included), and inner alpha-integrals g_k, so that
//   I(x + level shift v in the last base coordinate)
//     = lambda^{1/2} sum_k w_k g_k e^{i lambda z_k v}
// whenever the last base coordinate enters the phase additively.
struct PieceZProfile {
  double lambda = 2.0;
  std::vector<double> z;
  std::vector<double> w;
  std::vector<std::complex<double>> g;

  std::complex<double> at_level_shift(double v) const;
};
// amp_lo/amp_hi bound the support of the amplitude; the alpha-integral is
// clipped to them.  level_span bounds the |v| the caller will feed to
// at_level_shift, so the z-rule resolves those oscillations too.
PieceZProfile piece_z_profile(const PhaseFunction& phase, const PieceSpec& spec,
                              std::span<const double> x, const BumpPair& bumps,
                              const std::function<double(double)>& amplitude = {},
                              double amp_lo = -2.0, double amp_hi = 2.0,
                              double level_span = 0.0);

// The support of the sigma-cutoff in alpha: intervals within [lo, hi] where
// the cutoff does not vanish.  Empty result means the piece is exactly zero.
std::vector<std::pair<double, double>> piece_support(const PhaseFunction& phase,
                                                     const PieceSpec& spec,
                                                     std::span<const double> x, double lo,
                                                     double hi);

// Fourier-side route for the same piece: integrating out z first gives
//   I = lambda^{1/2} int dalpha amp(alpha) cut(alpha) B^(lambda Phi(x,alpha))
// with B^ the Fourier transform of beta(z).  B^ is tabulated once (it decays
// superpolynomially, so |w| > 128 is treated as zero), which makes the
// evaluation cheap even when the cutoff support is wide.  Agrees with
// piece_kernel_at wherever both resolve their oscillations.
std::complex<double> piece_kernel_hat(const PhaseFunction& phase, const PieceSpec& spec,
                                      std::span<const double> x, const BumpPair& bumps,
                                      const std::function<double(double)>& amplitude = {});

// Airy function by its Maclaurin series; the series is summed to machine
// precision (at least min_terms terms).  Domain |s| <= 10.
double airy(double s);
double airy_series(double s, int min_terms);

// Series on [-8, 8], first-terms asymptotics beyond; covers the oscillatory
// region far past the series domain (test oracle for fold closed forms).
double airy_extended(double s);

}  // namespace caustics
