#include "caustic_bench/reduction.hpp"

#include <cmath>
#include <stdexcept>

namespace caustics {

std::pair<double, double> schur_determinant(const SchurBlocks& blocks) {
  const auto& [A, B, C, D] = blocks;
  if (A.rows() != A.cols() || D.rows() != D.cols()) {
    throw std::domain_error("schur_determinant: A and D must be square");
  }
  if (B.rows() != A.rows() || B.cols() != D.cols() || C.rows() != D.rows() ||
      C.cols() != A.cols()) {
    throw std::domain_error("schur_determinant: block dimensions do not compose");
  }
  Eigen::PartialPivLU<Eigen::MatrixXd> luD(D);
  double detD = luD.determinant();
  if (std::abs(detD) <= 1e-12) throw std::domain_error("schur_determinant: D is singular");

  double lhs = (A - B * luD.solve(C)).determinant() * detD;

  Eigen::MatrixXd full(A.rows() + D.rows(), A.cols() + D.cols());
  full << A, B, C, D;
  double rhs = full.partialPivLu().determinant();
  return {lhs, rhs};
}

namespace {

std::vector<double> assemble_point(const PhaseFunction& phase, std::span<const double> x,
                                   const std::vector<int>& rho_vars,
                                   std::span<const double> rho,
                                   const std::vector<int>& sigma_vars,
                                   std::span<const double> sigma) {
  std::vector<double> p(phase.n_x() + phase.n_alpha(), 0.0);
  std::copy(x.begin(), x.end(), p.begin());
  for (std::size_t i = 0; i < rho_vars.size(); ++i) p[phase.n_x() + rho_vars[i]] = rho[i];
  for (std::size_t i = 0; i < sigma_vars.size(); ++i) p[phase.n_x() + sigma_vars[i]] = sigma[i];
  return p;
}

Eigen::MatrixXd angular_hessian(const PhaseFunction& phase, std::span<const double> point,
                                const std::vector<int>& rows, const std::vector<int>& cols) {
  Eigen::MatrixXd H(rows.size(), cols.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < cols.size(); ++j) {
      Poly d = phase.poly().derivative(phase.n_x() + rows[i]).derivative(phase.n_x() + cols[j]);
      H(i, j) = d.eval(point);
    }
  }
  return H;
}

}  // namespace

ReducedPhase::ReducedPhase(const PhaseFunction& phase, std::vector<int> sigma_vars,
                           std::vector<double> base_x, std::vector<double> base_rho,
                           std::vector<double> base_sigma)
    : phase_(phase),
      sigma_vars_(std::move(sigma_vars)),
      base_x_(std::move(base_x)),
      base_rho_(std::move(base_rho)),
      base_sigma_(std::move(base_sigma)) {
  if (phase_.n_alpha() < 2) throw std::domain_error("variable reduction needs n_alpha >= 2");
  std::vector<bool> in_sigma(phase_.n_alpha(), false);
  for (int s : sigma_vars_) {
    if (s < 0 || s >= phase_.n_alpha()) throw std::domain_error("sigma index out of range");
    in_sigma[s] = true;
  }
  for (int i = 0; i < phase_.n_alpha(); ++i) {
    if (!in_sigma[i]) rho_vars_.push_back(i);
  }
  if (rho_vars_.empty() || sigma_vars_.empty()) {
    throw std::domain_error("the alpha split must leave both blocks nonempty");
  }
}

std::vector<double> ReducedPhase::solve_sigma(std::span<const double> x,
                                              std::span<const double> rho) const {
  std::vector<double> sigma = base_sigma_;
  const int k = static_cast<int>(sigma_vars_.size());
  Eigen::VectorXd grad(k);
  for (int it = 0; it < 50; ++it) {
    auto p = assemble_point(phase_, x, rho_vars_, rho, sigma_vars_, sigma);
    for (int i = 0; i < k; ++i) {
      grad(i) = phase_.poly().derivative(phase_.n_x() + sigma_vars_[i]).eval(p);
    }
    Eigen::MatrixXd H = angular_hessian(phase_, p, sigma_vars_, sigma_vars_);
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(H);
    if (std::abs(lu.determinant()) <= 1e-12) {
      throw std::domain_error("reduce_variables: singular sigma-block Hessian");
    }
    Eigen::VectorXd step = lu.solve(grad);
    for (int i = 0; i < k; ++i) sigma[i] -= step(i);
    if (step.lpNorm<Eigen::Infinity>() < 1e-12) return sigma;
  }
  throw std::runtime_error("reduce_variables: Newton did not converge in 50 iterations");
}

double ReducedPhase::eval(std::span<const double> x, std::span<const double> rho) const {
  auto sigma = solve_sigma(x, rho);
  auto p = assemble_point(phase_, x, rho_vars_, rho, sigma_vars_, sigma);
  return phase_.poly().eval(p);
}

double ReducedPhase::fd_derivative(std::span<const double> x, std::span<const double> rho,
                                   std::span<const int> rho_orders) const {
  constexpr double h = 1e-4;
  int total = 0;
  int active = -1;
  for (std::size_t i = 0; i < rho_orders.size(); ++i) {
    total += rho_orders[i];
    if (rho_orders[i] > 0) active = static_cast<int>(i);
  }
  if (total == 0) return eval(x, rho);

  // Recurse one order at a time on the active variable (mixed orders reduce
  // variable by variable).
  std::vector<int> rest(rho_orders.begin(), rho_orders.end());
  rest[active] -= 1;
  std::vector<double> rp(rho.begin(), rho.end());
  rp[active] += h;
  std::vector<double> rm(rho.begin(), rho.end());
  rm[active] -= h;
  double fp = fd_derivative(x, rp, rest);
  double fm = fd_derivative(x, rm, rest);
  return (fp - fm) / (2.0 * h);
}

ReductionResult reduce_variables(const PhaseFunction& phase, std::span<const int> sigma_vars,
                                 std::span<const double> base_x,
                                 std::span<const double> base_rho,
                                 std::span<const double> base_sigma_guess) {
  ReducedPhase psi(phase, std::vector<int>(sigma_vars.begin(), sigma_vars.end()),
                   std::vector<double>(base_x.begin(), base_x.end()),
                   std::vector<double>(base_rho.begin(), base_rho.end()),
                   std::vector<double>(base_sigma_guess.begin(), base_sigma_guess.end()));

  auto sigma = psi.solve_sigma(base_x, base_rho);
  auto p = assemble_point(phase, base_x, psi.rho_vars(), base_rho, psi.sigma_vars(), sigma);

  // Exact Hessian determinants of phi at the solved point.
  std::vector<int> all_alpha(phase.n_alpha());
  for (int i = 0; i < phase.n_alpha(); ++i) all_alpha[i] = i;
  double det_sigma = angular_hessian(phase, p, psi.sigma_vars(), psi.sigma_vars())
                         .partialPivLu()
                         .determinant();
  double det_full =
      angular_hessian(phase, p, all_alpha, all_alpha).partialPivLu().determinant();

  // FD Hessian of psi over the rho block.
  const int kr = psi.n_rho();
  Eigen::MatrixXd Hpsi(kr, kr);
  for (int i = 0; i < kr; ++i) {
    for (int j = 0; j < kr; ++j) {
      std::vector<int> orders(kr, 0);
      orders[i] += 1;
      orders[j] += 1;
      Hpsi(i, j) = psi.fd_derivative(base_x, base_rho, orders);
    }
  }
  double det_psi = Hpsi.partialPivLu().determinant();

  double residual = std::abs(det_psi * det_sigma - det_full);
  return {std::move(psi), residual};
}

CausticProfile classify_reduced(const ReducedPhase& psi, std::span<const double> x,
                                std::span<const double> rho, double on_caustic_tol,
                                double nonvanishing_tol, int m_max) {
  if (psi.n_rho() != 1) throw std::domain_error("classify_reduced supports n_rho == 1");

  auto d_alpha = [&](int order) {
    std::vector<int> orders{order};
    return psi.fd_derivative(x, rho, orders);
  };
  if (std::abs(d_alpha(1)) > 1e-4) {
    throw std::invalid_argument("classify_reduced: point is not stationary in rho");
  }

  CausticProfile prof;
  prof.x.assign(x.begin(), x.end());
  prof.alpha.assign(rho.begin(), rho.end());

  double dist = d_alpha(2);
  if (std::abs(dist) > on_caustic_tol) {
    prof.corank = 0;
    return prof;
  }
  prof.corank = 1;
  for (int j = 1; j <= m_max; ++j) {
    if (std::abs(d_alpha(j + 2)) > nonvanishing_tol) {
      prof.index_m = j;
      prof.kappa = kappa_of_index(j);
      prof.q_m = q_m_of_index(j);
      prof.p_m = p_m_of_index(j);
      return prof;
    }
  }
  throw std::domain_error("classify_reduced: degenerate beyond supported index");
}

}  // namespace caustics
