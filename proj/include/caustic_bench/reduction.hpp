#pragma once

// Block-determinant identity and the reduction of oscillatory variables:
// solving the sigma-block stationarity implicitly gives the reduced phase
// psi(x, rho) = phi(x, rho, Sigma(x, rho)), and on the critical set
// det psi''_rho_rho * det phi''_sigma_sigma = det phi''_alpha_alpha.

#include <Eigen/Dense>
#include <span>
#include <utility>
#include <vector>

#include "caustic_bench/phase.hpp"

namespace caustics {

struct SchurBlocks {
  Eigen::MatrixXd A, B, C, D;  // A, D square; D invertible
};

// Left side via the Schur complement det(A - B D^{-1} C) * det D, right side
// via LU of the assembled block matrix.  Throws when D is singular
// (|det D| <= 1e-12).
std::pair<double, double> schur_determinant(const SchurBlocks& blocks);

// psi(x, rho) evaluated pointwise: the sigma block is solved by Newton
// (tolerance 1e-12 on the update, at most 50 iterations) from a warm start.
class ReducedPhase {
 public:
  ReducedPhase(const PhaseFunction& phase, std::vector<int> sigma_vars,
               std::vector<double> base_x, std::vector<double> base_rho,
               std::vector<double> base_sigma);

  int n_rho() const { return static_cast<int>(rho_vars_.size()); }

  double eval(std::span<const double> x, std::span<const double> rho) const;
  // Solves the sigma block at (x, rho); returned by value for diagnostics.
  std::vector<double> solve_sigma(std::span<const double> x, std::span<const double> rho) const;

  // Central finite differences of psi in the rho block, step 1e-4.
  double fd_derivative(std::span<const double> x, std::span<const double> rho,
                       std::span<const int> rho_orders) const;

  const PhaseFunction& phase() const { return phase_; }
  const std::vector<int>& sigma_vars() const { return sigma_vars_; }
  const std::vector<int>& rho_vars() const { return rho_vars_; }

 private:
  PhaseFunction phase_;
  std::vector<int> sigma_vars_;  // angular indices in the sigma block
  std::vector<int> rho_vars_;    // remaining angular indices
  std::vector<double> base_x_;
  std::vector<double> base_rho_;
  std::vector<double> base_sigma_;
};

struct ReductionResult {
  ReducedPhase psi;
  // |det psi''_rho_rho * det phi''_sigma_sigma - det phi''_alpha_alpha| at the
  // base point, with psi-Hessians by central differences at step 1e-4.
  double consistency_residual;
};

ReductionResult reduce_variables(const PhaseFunction& phase, std::span<const int> sigma_vars,
                                 std::span<const double> base_x,
                                 std::span<const double> base_rho,
                                 std::span<const double> base_sigma_guess);

// Classification of a reduced (implicitly defined) phase at a stationary
// point of its rho profile.  Finite differencing caps the attainable
// precision, so this uses looser gates than the exact-polynomial path.
CausticProfile classify_reduced(const ReducedPhase& psi, std::span<const double> x,
                                std::span<const double> rho, double on_caustic_tol = 1e-5,
                                double nonvanishing_tol = 1e-3, int m_max = 4);

}  // namespace caustics
