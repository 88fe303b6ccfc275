#include "caustic_bench/estimates.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <thread>

#include "caustic_bench/quadrature.hpp"
#include "caustic_bench/roots.hpp"

namespace caustics {

int worker_count() {
  if (const char* env = std::getenv("CAUSTIC_BENCH_THREADS")) {
    int v = std::atoi(env);
    if (v > 0) return v;
  }
  unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : static_cast<int>(hc);
}

namespace {

std::vector<double> grid_nodes(const GridSpec& grid) {
  std::vector<double> nodes;
  if (!(grid.h > 0.0)) throw std::domain_error("grid spacing must be positive");
  long n = static_cast<long>(std::floor((grid.hi - grid.lo) / grid.h + 1e-9));
  nodes.reserve(n + 1);
  for (long k = 0; k <= n; ++k) nodes.push_back(grid.lo + k * grid.h);
  return nodes;
}

std::vector<double> midpoint_nodes(const GridSpec& grid) {
  std::vector<double> nodes;
  long n = static_cast<long>(std::llround((grid.hi - grid.lo) / grid.h));
  n = std::max<long>(n, 1);
  nodes.reserve(n);
  for (long k = 0; k < n; ++k) nodes.push_back(grid.lo + (k + 0.5) * grid.h);
  return nodes;
}

}  // namespace

NormEstimate sup_norm(const std::function<std::complex<double>(double)>& f,
                      const GridSpec& grid) {
  auto nodes = grid_nodes(grid);
  std::vector<double> mags(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) mags[i] = std::abs(f(nodes[i]));

  std::vector<std::size_t> order(nodes.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::partial_sort(order.begin(), order.begin() + std::min<std::size_t>(3, order.size()),
                    order.end(), [&](std::size_t a, std::size_t b) { return mags[a] > mags[b]; });

  double best = *std::max_element(mags.begin(), mags.end());
  for (std::size_t t = 0; t < std::min<std::size_t>(3, order.size()); ++t) {
    double c = nodes[order[t]];
    for (int k = -8; k <= 8; ++k) {
      double x = c + k * grid.h / 8.0;
      if (x < grid.lo || x > grid.hi) continue;
      best = std::max(best, std::abs(f(x)));
    }
  }
  return {best, grid, "sup-grid"};
}

NormEstimate lq_norm(const std::function<std::complex<double>(double)>& f, const GridSpec& grid,
                     double q) {
  if (std::isinf(q)) {
    NormEstimate est = sup_norm(f, grid);
    est.method = "sup-grid";
    return est;
  }
  if (q < 1.0) throw std::domain_error("lq_norm needs q >= 1");
  double acc = 0.0;
  for (double x : midpoint_nodes(grid)) acc += std::pow(std::abs(f(x)), q) * grid.h;
  return {std::pow(acc, 1.0 / q), grid, "lq-grid"};
}

NormEstimate l1_l2_piece_proxy(const PhaseFunction& phase, const DyadicIndex& index,
                               const PieceL2Grid& grid, const BumpPair& bumps) {
  int n_x = phase.n_x();
  if (n_x < 2) throw std::domain_error("piece proxy needs at least two base variables");

  PieceSpec spec;
  spec.lambda = index.lambda();
  spec.sigma = index.sigma();
  spec.cut = index.tilde ? PieceCut::Tilde : PieceCut::Signed;
  spec.sign = index.sign;

  auto slope_nodes = midpoint_nodes(grid.slope);
  auto level_nodes = midpoint_nodes(grid.level);

  // One z-profile per slope node (the level enters the phase additively),
  // with the z-rule sized for the whole level window.
  double level_span = std::max(std::abs(grid.level.lo), std::abs(grid.level.hi));
  for (double y : grid.y_shifts) level_span += std::abs(y) / grid.y_shifts.size();
  std::vector<PieceZProfile> profiles(slope_nodes.size());
  for (std::size_t i = 0; i < slope_nodes.size(); ++i) {
    std::vector<double> x(n_x, 0.0);
    x[n_x - 2] = slope_nodes[i];
    profiles[i] = piece_z_profile(phase, spec, x, bumps, {}, -2.0, 2.0, level_span);
  }

  double best = 0.0;
  for (double y : grid.y_shifts) {
    double sq = 0.0;
    for (std::size_t i = 0; i < slope_nodes.size(); ++i) {
      if (profiles[i].z.empty()) continue;
      for (double b : level_nodes) {
        std::complex<double> v = profiles[i].at_level_shift(b - y);
        sq += std::norm(v) * grid.slope.h * grid.level.h;
      }
    }
    best = std::max(best, std::sqrt(sq));
  }
  NormEstimate est;
  est.value = best;
  est.grid = grid.level;
  est.method = "ff-star";
  return est;
}

namespace {

// Counting kernel shared by the pointwise and batched sublevel estimators.
// Counts nodes alpha = lo + (k + 1/2) h, k in [0, n), passing
// |f(alpha)-gamma| <= 1/lambda and |f''(alpha)| >= sigma.
std::int64_t count_cells(const Poly1& f, const Poly1& f2, double inv_lambda, double sigma,
                         double gamma, double lo, double h, std::int64_t n) {
  int threads = worker_count();
  auto count_range = [&](std::int64_t a, std::int64_t b) {
    std::int64_t c = 0;
    for (std::int64_t k = a; k < b; ++k) {
      double alpha = lo + (static_cast<double>(k) + 0.5) * h;
      if (std::abs(f.eval(alpha) - gamma) <= inv_lambda && std::abs(f2.eval(alpha)) >= sigma) {
        ++c;
      }
    }
    return c;
  };
  if (threads <= 1 || n < 200000) return count_range(0, n);
  std::vector<std::int64_t> partial(threads, 0);
  std::vector<std::thread> pool;
  std::int64_t chunk = (n + threads - 1) / threads;
  for (int t = 0; t < threads; ++t) {
    std::int64_t a = t * chunk;
    std::int64_t b = std::min(n, a + chunk);
    if (a >= b) break;
    pool.emplace_back([&, t, a, b] { partial[t] = count_range(a, b); });
  }
  for (auto& th : pool) th.join();
  std::int64_t total = 0;
  for (auto c : partial) total += c;  // fixed chunk order
  return total;
}

}  // namespace

double sublevel_measure(const Poly1& f, double lambda, double sigma, double gamma, double lo,
                        double hi) {
  if (lambda < 1.0 || sigma <= 0.0) throw std::domain_error("sublevel_measure needs lambda >= 1, sigma > 0");
  double h = std::min(1e-5, 1.0 / (100.0 * lambda));
  Poly1 f2 = f.derivative().derivative();
  double inv_lambda = 1.0 / lambda;

  auto measure_at = [&](double spacing) {
    std::int64_t n = static_cast<std::int64_t>(std::ceil((hi - lo) / spacing));
    return static_cast<double>(count_cells(f, f2, inv_lambda, sigma, gamma, lo, spacing, n)) *
           spacing;
  };
  double coarse = measure_at(h);
  double fine = measure_at(h / 2.0);
  double gate = 0.02 * std::max(coarse, fine) + 4.0 * h;
  if (std::abs(coarse - fine) > gate) {
    throw std::runtime_error("sublevel_measure: resolution insufficient (grids disagree)");
  }
  return fine;
}

std::vector<double> sublevel_measures_batch(const Poly1& f, double lambda,
                                            std::span<const double> sigmas,
                                            std::span<const double> gammas, double lo,
                                            double hi) {
  double h = std::min(1e-5, 1.0 / (100.0 * lambda)) / 2.0;
  Poly1 f2 = f.derivative().derivative();
  double inv_lambda = 1.0 / lambda;
  std::int64_t n = static_cast<std::int64_t>(std::ceil((hi - lo) / h));
  const std::size_t ns = sigmas.size(), ng = gammas.size();

  int threads = worker_count();
  auto count_range = [&](std::int64_t a, std::int64_t b) {
    std::vector<std::int64_t> counts(ns * ng, 0);
    for (std::int64_t k = a; k < b; ++k) {
      double alpha = lo + (static_cast<double>(k) + 0.5) * h;
      double fv = f.eval(alpha);
      double dd = std::abs(f2.eval(alpha));
      for (std::size_t gi = 0; gi < ng; ++gi) {
        if (std::abs(fv - gammas[gi]) > inv_lambda) continue;
        for (std::size_t si = 0; si < ns; ++si) {
          if (dd >= sigmas[si]) ++counts[gi * ns + si];
        }
      }
    }
    return counts;
  };

  std::vector<std::int64_t> total(ns * ng, 0);
  if (threads <= 1 || n < 200000) {
    total = count_range(0, n);
  } else {
    std::vector<std::vector<std::int64_t>> partial(threads);
    std::vector<std::thread> pool;
    std::int64_t chunk = (n + threads - 1) / threads;
    for (int t = 0; t < threads; ++t) {
      std::int64_t a = t * chunk;
      std::int64_t b = std::min(n, a + chunk);
      if (a >= b) break;
      pool.emplace_back([&, t, a, b] { partial[t] = count_range(a, b); });
    }
    for (auto& th : pool) th.join();
    for (const auto& p : partial) {
      for (std::size_t i = 0; i < p.size(); ++i) total[i] += p[i];
    }
  }

  std::vector<double> out(ns * ng);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = static_cast<double>(total[i]) * h;
  return out;
}

double vanishing_integral(const Poly1& f, double sigma, const BumpPair& bumps, double lo,
                          double hi) {
  if (!(sigma > 0.0 && sigma <= 1.0)) throw std::domain_error("vanishing_integral needs sigma in (0,1]");
  // Support cells of beta(f/sigma): {sigma/2 <= f <= 2 sigma}.
  std::vector<double> cuts{lo, hi};
  for (double level : {sigma / 2.0, 2.0 * sigma}) {
    std::vector<double> c = f.coeffs();
    if (c.empty()) c.push_back(0.0);
    c[0] -= level;
    for (double r : real_roots(Poly1(std::move(c)), lo, hi)) cuts.push_back(r);
  }
  std::sort(cuts.begin(), cuts.end());

  auto integrand = [&](double a) -> std::complex<double> {
    return {bumps.beta(f.eval(a) / sigma), 0.0};
  };
  QuadratureOptions opt;
  opt.tol = 1e-10;
  double acc = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    double a = cuts[i], b = cuts[i + 1];
    if (b - a < 1e-14) continue;
    double mid = f.eval(0.5 * (a + b));
    if (bumps.beta(mid / sigma) == 0.0) continue;
    acc += integrate_gk(integrand, nullptr, a, b, opt).value.real();
  }
  return acc;
}

namespace {

double unit_bump(double s) {
  if (std::abs(s) >= 1.0) return 0.0;
  return std::exp(1.0) * std::exp(-1.0 / (1.0 - s * s));  // peak 1 at s = 0
}

}  // namespace

Atom::Atom(double center, double r, int n) : center_(center), r_(r), n_(n) {
  if (!(r > 0.0 && r <= 1.0)) throw std::domain_error("atom side must lie in (0, 1]");
  if (n != 1) throw std::domain_error("atoms are one-dimensional here");
}

double Atom::eval(double y) const {
  double w = r_ / 4.0;
  double scale = std::pow(r_, -n_);
  return scale * (unit_bump((y - (center_ - w)) / w) - unit_bump((y - (center_ + w)) / w));
}

std::complex<double> Atom::fourier(double omega) const {
  auto f = [&](double y) -> std::complex<double> {
    return std::polar(eval(y), -omega * y);
  };
  auto ph = [&](double y) { return -omega * y; };
  QuadratureOptions opt;
  opt.tol = 1e-10;  // |FT| <= ||a||_1 <= 1, so this is plenty
  return integrate_gk(f, ph, support_lo(), support_hi(), opt).value;
}

Atom make_atom(double center, double r, int n) { return Atom(center, r, n); }

double atom_factor(const PhaseFunction& phase, double lambda, const Atom& atom,
                   const GridSpec& level_grid) {
  BumpPair bumps;
  PieceSpec spec;
  spec.lambda = lambda;
  spec.cut = PieceCut::None;

  std::vector<double> x(phase.n_x(), 0.0);
  auto amp = [&](double a) { return bumps.rho(4.0 * a); };
  double level_span = std::max(std::abs(level_grid.lo), std::abs(level_grid.hi)) +
                      atom.r() + std::abs(atom.center());
  PieceZProfile prof = piece_z_profile(phase, spec, x, bumps, amp, -0.5, 0.5, level_span);
  if (prof.z.empty()) throw std::domain_error("atom_factor: empty kernel");

  std::vector<std::complex<double>> atom_ft(prof.z.size());
  for (std::size_t k = 0; k < prof.z.size(); ++k) {
    atom_ft[k] = atom.fourier(lambda * prof.z[k]);
  }

  double num = 0.0, den = 0.0;
  for (double v : grid_nodes(level_grid)) {
    std::complex<double> ref{0.0, 0.0}, img{0.0, 0.0};
    for (std::size_t k = 0; k < prof.z.size(); ++k) {
      std::complex<double> rot = std::polar(1.0, lambda * prof.z[k] * v);
      ref += prof.w[k] * prof.g[k] * rot;
      // e^{i lambda z (v - y)} integrated against a(y) dy = e^{i lambda z v} * FT(a)(lambda z)
      img += prof.w[k] * prof.g[k] * rot * atom_ft[k];
    }
    num = std::max(num, std::abs(img));
    den = std::max(den, std::abs(ref));
  }
  if (den <= 1e-12) throw std::runtime_error("atom_factor: reference kernel vanished on the grid");
  return num / den;
}

}  // namespace caustics
