#pragma once

// Exact exponent calculus on the (1/p, 1/q) square: the regions A_m, B_m,
// C_m, the Sobolev orders they carry, Hardy-source orders, half-wave
// exponents, and the predicted L^q growth above the critical exponent
// q_m = 2 + 2/m.  Everything here is exact rational arithmetic; region
// boundaries are measure zero and float tests would misclassify them.

#include <optional>
#include <string>
#include <vector>

#include "caustic_bench/rational.hpp"

namespace caustics {

struct PQPoint {
  Rational inv_p;  // 1/p, in [0, 1]
  Rational inv_q;  // 1/q, in [0, 1]
};

// (1/p, 1/q) -> (1 - 1/q, 1 - 1/p); an involution swapping A_m and B_m.
PQPoint dual_point(const PQPoint& pt);

// 1/p for a Lebesgue exponent given as "p" text: a rational >= 1 or "inf".
Rational inv_exponent(const std::string& text);

Rational delta_p(const PQPoint& pt);  // 1/p - 1/2
Rational delta_q(const PQPoint& pt);  // 1/2 - 1/q

enum class RegionLabel { A, B, C, Boundary, Outside };

std::string region_name(RegionLabel label, int m);

struct RegionSet {
  int m;
  std::vector<PQPoint> A;  // open triangle
  std::vector<PQPoint> B;  // open triangle, dual image of A
  std::vector<PQPoint> C;  // open convex quadrilateral
};

RegionSet region_vertices(int m);

struct Region {
  RegionLabel label;
  int m;
  std::vector<PQPoint> polygon;  // vertices when label is A/B/C, else empty
};

Region classify_pq(const PQPoint& pt, int m);

struct SobolevOrder {
  Rational order;
  RegionLabel region;
  int m;
  std::string formula_id;
};

// Sobolev order for L^p_order -> L^q over the region containing (p,q).
// Boundary points throw (the estimates there hold with an epsilon loss
// only); points outside every region throw "not covered".
SobolevOrder sobolev_order(const PQPoint& pt, int m, int n, const Rational& mu);

// Hardy-source order: h^1_order -> L^q for 2 <= q <= infinity, m in {1,2}.
// Throws at the endpoint q == q_m and outside the hypotheses.
SobolevOrder hardy_order(const Rational& inv_q, int m, int n, const Rational& mu);

struct HalfwaveOrders {
  Rational uniform_order;    // (n+1) delta_q
  Rational blowup_exponent;  // delta_q, the |T-t|^{-delta_q} rate
  Rational robust_order;     // (n+1) delta_q + 2 kappa delta_q
};

// Half-wave exponents for 2 <= q < infinity.
HalfwaveOrders halfwave_orders(const Rational& inv_q, int n, int m);

// Exponent of the tau-growth of ||u_tau||_{L^q} above the caustic-free rate:
// zero up to q_m, then kappa (delta_q - delta_{q_m}) / (1/2 - delta_{q_m}).
Rational predicted_lq_growth(const Rational& inv_q, int m);

// Order on the duality line q = p': (n + 1 + 2 kappa) delta_p.  Agrees with
// the C-region formulas restricted to q = p'.
Rational duality_line_order(const Rational& inv_p, int n, int m);

// 640x640 diagram of the regions in the unit (1/p, 1/q) square, origin at
// the bottom-left; A #4477aa, B #66ccee, C #ee6677, optional query point in
// black.  Self-contained SVG markup.
std::string regions_svg(int m, const std::optional<PQPoint>& query = std::nullopt);

}  // namespace caustics
