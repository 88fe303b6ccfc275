// Acceptance suite: every scaling law and identity the workbench promises,
// one pass/fail line per criterion.  Exit code 0 only when everything holds.
//
// Usage: acceptance [path-to-caustic-bench-cli]

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "caustic_bench/bump.hpp"
#include "caustic_bench/estimates.hpp"
#include "caustic_bench/exponents.hpp"
#include "caustic_bench/harness.hpp"
#include "caustic_bench/oscillatory.hpp"
#include "caustic_bench/phase.hpp"
#include "caustic_bench/reduction.hpp"

using namespace caustics;
using std::numbers::pi;

namespace {

int failures = 0;

void line(int id, bool pass, const std::string& what, const std::string& detail) {
  std::printf("[%s] criterion %2d: %s (%s)\n", pass ? "PASS" : "FAIL", id, what.c_str(),
              detail.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

struct Timed {
  Report report;
  double seconds;
};

Timed run(const SweepConfig& cfg) {
  auto t0 = std::chrono::steady_clock::now();
  Report r = verify(cfg);
  auto t1 = std::chrono::steady_clock::now();
  return {r, std::chrono::duration<double>(t1 - t0).count()};
}

std::string fit_detail(const Report& r, double seconds) {
  std::ostringstream os;
  os << "slope " << r.fitted.slope << " vs " << r.predicted.str() << ", r2 "
     << r.fitted.r_squared << ", " << seconds << "s";
  return os.str();
}

}  // namespace

int main(int argc, char** argv) {
  const std::string cli = argc > 1 ? argv[1] : "";

  // 1. fold order kappa = 1/6
  {
    SweepConfig cfg;
    cfg.scenario = "fold-sup";
    Timed t = run(cfg);
    bool pass = t.report.pass && t.seconds <= 60.0;
    line(1, pass, "fold order 1/6 over tau in 2^6..2^16", fit_detail(t.report, t.seconds));
  }

  // 2. cusp order kappa = 1/4
  {
    SweepConfig cfg;
    cfg.scenario = "cusp-sup";
    Timed t = run(cfg);
    bool pass = t.report.pass && t.seconds <= 120.0;
    line(2, pass, "cusp order 1/4 over the same ladder", fit_detail(t.report, t.seconds));
  }

  // 3. caustic-insensitive L^q below q_c, growth 1/12 at q = 8, with the
  //    Airy closed-form cross-check
  {
    auto t0 = std::chrono::steady_clock::now();
    SweepConfig c3;
    c3.scenario = "fold-lq";
    c3.fixed["q"] = 3.0;
    Report r3 = verify(c3);
    SweepConfig c8 = c3;
    c8.fixed["q"] = 8.0;
    Report r8 = verify(c8);

    // Airy closed form on the same ladder and window
    bool oracle_ok = true;
    double c = std::pow(3.0, -1.0 / 3.0);
    for (double q : {3.0, 8.0}) {
      std::vector<std::pair<double, double>> samples;
      for (int p = 6; p <= 16; ++p) {
        double tau = std::ldexp(1.0, p);
        double t23 = std::pow(tau, 2.0 / 3.0);
        double acc = 0.0, h = 2.0 / 4096.0;
        for (int i = 0; i < 4096; ++i) {
          double x = -1.0 + (i + 0.5) * h;
          double u = std::pow(tau, 1.0 / 6.0) * 2.0 * pi * c * std::abs(airy_extended(c * t23 * x));
          acc += std::pow(u, q) * h;
        }
        samples.push_back({static_cast<double>(p), std::log2(std::pow(acc, 1.0 / q))});
      }
      FitResult oracle = fit_exponent(samples);
      double measured = q == 3.0 ? r3.fitted.slope : r8.fitted.slope;
      if (std::abs(oracle.slope - measured) > 0.02) oracle_ok = false;
    }
    auto t1 = std::chrono::steady_clock::now();
    double secs = std::chrono::duration<double>(t1 - t0).count();
    bool pass = r3.pass && r8.pass && oracle_ok && secs <= 180.0;
    std::ostringstream os;
    os << "q=3 slope " << r3.fitted.slope << ", q=8 slope " << r8.fitted.slope
       << " vs 1/12, Airy cross-check " << (oracle_ok ? "ok" : "off") << ", " << secs << "s";
    line(3, pass, "L^q growth 0 below q_c and 1/12 at q=8", os.str());
  }

  // 4. piece sigma-scaling -1/2, uniform over lambda in {2^10, 2^12}
  {
    SweepConfig cfg;
    cfg.scenario = "piece-sup-sigma";
    Timed t = run(cfg);
    std::string notes;
    for (const auto& n : t.report.notes) notes += n + "; ";
    line(4, t.report.pass, "piece sup-norm scales as sigma^{-1/2}",
         fit_detail(t.report, t.seconds) + "; " + notes);
  }

  // 5. L^1 -> L^2 piece improvement sigma^{1/(2m)}, m = 1
  {
    SweepConfig cfg;
    cfg.scenario = "piece-l2-sigma";
    Timed t = run(cfg);
    line(5, t.report.pass, "piece L^1->L^2 proxy scales as sigma^{1/2}",
         fit_detail(t.report, t.seconds));
  }

  // 6. sublevel estimate: envelope fit and the full lattice bound
  {
    SweepConfig cfg;
    cfg.scenario = "sublevel";
    Timed t = run(cfg);
    std::string notes;
    for (const auto& n : t.report.notes) notes += n + "; ";
    line(6, t.report.pass, "sublevel measure <= 5/sqrt(lambda sigma) on the lattice",
         fit_detail(t.report, t.seconds) + "; " + notes);
  }

  // 7. vanishing integral: fitted sigma-exponent 1/m for m = 1, 2, 3
  {
    bool pass = true;
    std::ostringstream os;
    for (int m : {1, 2, 3}) {
      SweepConfig cfg;
      cfg.scenario = "vanishing";
      cfg.fixed["m"] = m;
      Report r = verify(cfg);
      pass = pass && r.pass && std::abs(r.fitted.slope - 1.0 / m) <= 0.02;
      os << "m=" << m << " slope " << r.fitted.slope << "; ";
    }
    line(7, pass, "vanishing integral scales as sigma^{1/m}", os.str());
  }

  // 8. atom factor: peak near lambda r = 1, >= 4x falloff at the ends
  {
    SweepConfig cfg;
    cfg.scenario = "atom-factor";
    Timed t = run(cfg);
    std::string notes;
    for (const auto& n : t.report.notes) notes += n + "; ";
    line(8, t.report.pass, "atom transfer factor peaks at lambda r ~ 1", notes);
  }

  // 9. determinant identity and variable-reduction consistency
  {
    std::mt19937_64 rng(20240518);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    std::uniform_int_distribution<int> size_dist(1, 4);
    bool schur_ok = true;
    int done = 0;
    while (done < 1000) {
      int na = size_dist(rng), nd = size_dist(rng);
      auto rand_mat = [&](int r, int c2) {
        Eigen::MatrixXd m(r, c2);
        for (int i = 0; i < r; ++i)
          for (int j = 0; j < c2; ++j) m(i, j) = dist(rng);
        return m;
      };
      SchurBlocks b{rand_mat(na, na), rand_mat(na, nd), rand_mat(nd, na), rand_mat(nd, nd)};
      if (std::abs(b.D.determinant()) < 1e-2) continue;
      auto [lhs, rhs] = schur_determinant(b);
      if (std::abs(lhs - rhs) > 1e-9 * std::max(1.0, std::abs(rhs))) schur_ok = false;
      ++done;
    }

    PhaseFunction phi1 = make_phase_from_expr("a1^3 + a2^2 + x1*a1 + x2");
    double res1 = reduce_variables(phi1, std::vector<int>{1}, std::vector<double>{0.5, 0.2},
                                   std::vector<double>{0.3}, std::vector<double>{0.1})
                      .consistency_residual;
    PhaseFunction phi2 = make_phase_from_expr("a1^3 + (a2 - a1)^2 + x1*a1 + x2");
    double res2 = reduce_variables(phi2, std::vector<int>{1}, std::vector<double>{1.0, 0.0},
                                   std::vector<double>{0.3}, std::vector<double>{0.0})
                      .consistency_residual;
    bool pass = schur_ok && res1 <= 1e-6 && res2 <= 1e-6;
    std::ostringstream os;
    os << "1000 seeded block instances " << (schur_ok ? "ok" : "violated")
       << ", reduction residuals " << res1 << " / " << res2;
    line(9, pass, "block determinant identity and reduction consistency", os.str());
  }

  // 10. exponent calculus: exact rational identities and worked values
  {
    auto t0 = std::chrono::steady_clock::now();
    bool ok = true;
    for (int m = 1; m <= 6; ++m) {
      if (Rational(1) / p_m_of_index(m) + Rational(1) / q_m_of_index(m) != Rational(1)) ok = false;
    }
    // region duality on a 1/64 grid
    for (int m : {1, 2, 3}) {
      for (int i = 0; i <= 64 && ok; ++i) {
        for (int j = 0; j <= 64; ++j) {
          PQPoint pt{Rational(i, 64), Rational(j, 64)};
          Region r = classify_pq(pt, m);
          Region rd = classify_pq(dual_point(pt), m);
          if (r.label == RegionLabel::A && rd.label != RegionLabel::B) { ok = false; break; }
          if (r.label == RegionLabel::B && rd.label != RegionLabel::A) { ok = false; break; }
        }
      }
    }
    // edge continuity of the order formulas
    for (int m : {1, 2}) {
      Rational kappa = kappa_of_index(m);
      Rational inv_qm = Rational(1) / q_m_of_index(m);
      PQPoint half{Rational(1, 2), Rational(1, 2)}, edge{Rational(1), inv_qm};
      for (int t = 0; t <= 8; ++t) {
        Rational w(t, 8);
        PQPoint pt{half.inv_p * (Rational(1) - w) + edge.inv_p * w,
                   half.inv_q * (Rational(1) - w) + edge.inv_q * w};
        Rational a = Rational(2) * delta_p(pt) + delta_q(pt);
        Rational c = Rational(2) * delta_p(pt) +
                     (delta_p(pt) + delta_q(pt)) * (Rational(1, 2) + kappa) +
                     (delta_q(pt) - delta_p(pt));
        if (a != c) ok = false;
      }
    }
    // worked values
    if (hardy_order(Rational(0), 1, 1, Rational(0)).order != Rational(7, 6)) ok = false;
    if (hardy_order(Rational(1, 3), 1, 1, Rational(0)).order != Rational(2, 3)) ok = false;
    if (halfwave_orders(Rational(1, 4), 3, 1).robust_order != Rational(13, 12)) ok = false;
    if (predicted_lq_growth(Rational(1, 8), 1) != Rational(1, 12)) ok = false;
    if (sobolev_order(PQPoint{Rational(9, 10), Rational(3, 5)}, 1, 2, Rational(0)).order !=
        Rational(7, 10)) ok = false;
    auto t1 = std::chrono::steady_clock::now();
    double secs = std::chrono::duration<double>(t1 - t0).count();
    line(10, ok && secs <= 1.0, "exponent calculus identities, exact",
         "duality + continuity + 7/6, 2/3, 13/12, 1/12, 7/10; " + std::to_string(secs) + "s");
  }

  // 11. pre-caustic gap: s^{-1/4} amplitude and the |Phi''| >= 2s bound
  {
    SweepConfig cfg;
    cfg.scenario = "precaustic-gap";
    Timed t = run(cfg);
    std::string notes;
    for (const auto& n : t.report.notes) notes += n + "; ";
    line(11, t.report.pass, "pre-caustic amplitude scales as gap^{-1/4}",
         fit_detail(t.report, t.seconds) + "; " + notes);
  }

  // 12. infrastructure: partition of unity, determinism, CLI verify
  {
    BumpPair bumps;
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> dist(-1024.0, 1024.0);
    bool partition_ok = true;
    for (int i = 0; i < 10000; ++i) {
      if (partition_residual(bumps, dist(rng), 10) > 1e-12) partition_ok = false;
    }

    SweepConfig det;
    det.scenario = "vanishing";
    det.fixed["m"] = 2.0;
    det.seed = 123;
    bool determinism_ok = sweep_csv(run_sweep(det).rows) == sweep_csv(run_sweep(det).rows);
    {
      auto ja = nlohmann::ordered_json::parse(report_json(verify(det)));
      auto jb = nlohmann::ordered_json::parse(report_json(verify(det)));
      ja.erase("runtime_s");
      jb.erase("runtime_s");
      determinism_ok = determinism_ok && ja.dump() == jb.dump();
    }

    bool cli_ok = true;
    double cli_secs = 0.0;
    if (!cli.empty()) {
      auto t0 = std::chrono::steady_clock::now();
      std::string cmd = "\"" + cli + "\" verify --suite all --seed 42 > acceptance_cli_verify.log 2>&1";
      int rc = std::system(cmd.c_str());
      auto t1 = std::chrono::steady_clock::now();
      cli_secs = std::chrono::duration<double>(t1 - t0).count();
      cli_ok = rc == 0 && cli_secs <= 900.0;
    }
    bool pass = partition_ok && determinism_ok && cli_ok;
    std::ostringstream os;
    os << "partition residual <= 1e-12 " << (partition_ok ? "ok" : "violated")
       << ", byte-identical reruns " << (determinism_ok ? "ok" : "violated");
    if (!cli.empty()) os << ", verify --suite all rc-0 in " << cli_secs << "s";
    line(12, pass, "infrastructure: partition, determinism, full verify", os.str());
  }

  std::printf("%s: %d criterion(s) failed\n", failures == 0 ? "ALL PASS" : "FAILURES", failures);
  return failures == 0 ? 0 : 1;
}
