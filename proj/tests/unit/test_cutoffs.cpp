#include <doctest.h>

#include <cmath>
#include <random>
#include <set>

#include "caustic_bench/bump.hpp"
#include "caustic_bench/dyadic.hpp"

using namespace caustics;

TEST_CASE("rho values and symmetry") {
  BumpPair bumps = make_bump_pair();
  CHECK(bumps.rho(0.5) == 1.0);
  CHECK(bumps.rho(-1.0) == 1.0);
  CHECK(bumps.rho(1.0) == 1.0);
  CHECK(bumps.rho(3.0) == 0.0);
  CHECK(bumps.rho(2.0) == 0.0);
  double mid = bumps.rho(1.5);
  CHECK(mid > 0.0);
  CHECK(mid < 1.0);
  CHECK(bumps.rho(1.5) == bumps.rho(-1.5));  // exact: evaluation goes through |t|
  CHECK(mid == doctest::Approx(0.5).epsilon(1e-9));  // mollifier is even around the midpoint
  // monotone decreasing on [1, 2]
  double prev = 1.0;
  for (int i = 1; i <= 20; ++i) {
    double v = bumps.rho(1.0 + 0.05 * i);
    CHECK(v <= prev + 1e-15);
    prev = v;
  }
}

TEST_CASE("beta support is exact and positive inside") {
  BumpPair bumps;
  CHECK(bumps.beta(0.5) == 0.0);
  CHECK(bumps.beta(2.0) == 0.0);
  CHECK(bumps.beta(0.1) == 0.0);
  CHECK(bumps.beta(0.0) == 0.0);
  CHECK(bumps.beta(-1.0) == 0.0);
  CHECK(bumps.beta(3.0) == 0.0);
  for (double t : {0.6, 0.9, 1.0, 1.3, 1.7, 1.95}) {
    CHECK(bumps.beta(t) > 0.0);
  }
  // defining relation beta(t) + rho(2t) = rho(t) for t > 0
  for (double t : {0.3, 0.6, 0.8, 1.1, 1.6, 1.9, 2.5}) {
    CHECK(bumps.beta(t) + bumps.rho(2 * t) == doctest::Approx(bumps.rho(t)).epsilon(1e-14));
  }
}

TEST_CASE("dyadic partition of unity telescopes") {
  BumpPair bumps;
  CHECK(partition_residual(bumps, 0.0, 5) == 0.0);
  CHECK(partition_residual(bumps, 100.0, 10) <= 1e-12);
  CHECK(partition_residual(bumps, -7.3, 6) <= 1e-12);
  CHECK(partition_residual(bumps, 1.5, 4) <= 1e-12);  // mid-scale needs the j=0 term
}

TEST_CASE("partition of unity on 1e4 sampled points") {
  BumpPair bumps;
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> dist(-1024.0, 1024.0);
  for (int i = 0; i < 10000; ++i) {
    double t = dist(rng);
    REQUIRE(partition_residual(bumps, t, 10) <= 1e-12);
  }
}

TEST_CASE("sigma0 floor arithmetic") {
  Sigma0 a = sigma0(4096, 1);  // l = 12, m = 1 -> j0 = 4
  CHECK(a.j0 == 4);
  CHECK(a.sigma0 == doctest::Approx(1.0 / 16.0));
  Sigma0 b = sigma0(1024, 2);  // l = 10, m = 2 -> j0 = 5
  CHECK(b.j0 == 5);
  CHECK(b.sigma0 == doctest::Approx(1.0 / 32.0));
  Sigma0 c = sigma0(2, 1);  // floor(1/3) = 0
  CHECK(c.j0 == 0);
  CHECK(c.sigma0 == 1.0);
  CHECK_THROWS(sigma0(3, 1));
  CHECK_THROWS(sigma0(1, 1));
  CHECK_THROWS(sigma0(4, 0));
}

TEST_CASE("piece enumeration") {
  auto pieces = enumerate_pieces(4096, 1);
  int at_top = 0, tilde_at_top = 0;
  for (const auto& p : pieces) {
    if (p.l == 12) {
      ++at_top;
      if (p.tilde) ++tilde_at_top;
    }
  }
  CHECK(at_top == 7);  // j in {1,2,3} both signs + tilde
  CHECK(tilde_at_top == 1);

  auto tiny = enumerate_pieces(2, 1);
  REQUIRE(tiny.size() == 1);
  CHECK(tiny[0].tilde);
  CHECK(tiny[0].l == 1);
  CHECK(tiny[0].str() == "l=1,j=tilde,s=+");

  auto m2 = enumerate_pieces(16, 2);
  int at_l4 = 0;
  for (const auto& p : m2) {
    if (p.l == 4) ++at_l4;
  }
  CHECK(at_l4 == 3);  // j0 = 2: j = 1 both signs + tilde

  // duplicate-free, lexicographic in (l, j, sign with + first)
  std::set<std::string> seen;
  for (const auto& p : pieces) {
    CHECK(seen.insert(p.str()).second);
  }
  for (std::size_t i = 1; i < pieces.size(); ++i) {
    const auto& a = pieces[i - 1];
    const auto& b = pieces[i];
    bool ordered = a.l < b.l || (a.l == b.l && a.j < b.j) ||
                   (a.l == b.l && a.j == b.j && (a.sign > b.sign || b.tilde));
    CHECK(ordered);
  }
}

TEST_CASE("the two piece bounds cross at sigma0 within a factor of 4") {
  // lambda^{(n+1)/2} sigma^{-1/2} vs lambda^{(n+2)/2} sigma^{1/m} at
  // sigma = sigma0(lambda); the dimension factor cancels in the ratio.
  for (int m : {1, 2}) {
    for (int l = 1; l <= 20; ++l) {
      double lambda = std::ldexp(1.0, l);
      double s0 = sigma0(static_cast<std::uint64_t>(lambda), m).sigma0;
      const int n = 2;
      double off = std::pow(lambda, (n + 1) / 2.0) * std::pow(s0, -0.5);
      double at = std::pow(lambda, (n + 2) / 2.0) * std::pow(s0, 1.0 / m);
      double ratio = at / off;
      CHECK(ratio <= 4.0);
      CHECK(ratio >= 0.25);
    }
  }
}

TEST_CASE("enumerated cutoffs sum to one near the caustic band") {
  BumpPair bumps;
  const std::uint64_t lambda_max = 256;
  auto pieces = enumerate_pieces(lambda_max, 1);
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> theta_dist(2.0, 256.0);
  std::uniform_real_distribution<double> dd_dist(-0.25, 0.25);
  for (int trial = 0; trial < 500; ++trial) {
    double theta = theta_dist(rng);
    double dd = dd_dist(rng);
    double total = bumps.rho(theta);  // smooth part
    for (const auto& p : pieces) {
      double band = bumps.beta(theta / p.lambda());
      if (band == 0.0) continue;
      double cut = p.tilde ? bumps.rho(dd / p.sigma())
                           : bumps.beta(p.sign * dd / p.sigma());
      total += band * cut;
      // the "nice" far-from-caustic remainder, once per lambda block
      if (p.tilde) total += band * (1.0 - bumps.rho(2.0 * std::abs(dd)));
    }
    REQUIRE(std::abs(total - 1.0) <= 1e-12);
  }
}
