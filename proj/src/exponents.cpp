#include "caustic_bench/exponents.hpp"

#include <sstream>
#include <stdexcept>

#include "caustic_bench/phase.hpp"

namespace caustics {

PQPoint dual_point(const PQPoint& pt) {
  return {Rational(1) - pt.inv_q, Rational(1) - pt.inv_p};
}

Rational inv_exponent(const std::string& text) {
  if (text == "inf" || text == "infinity" || text == "oo") return Rational(0);
  Rational p = Rational::parse(text);
  if (p < Rational(1)) throw std::domain_error("Lebesgue exponent must be >= 1 or inf");
  return Rational(1) / p;
}

Rational delta_p(const PQPoint& pt) { return pt.inv_p - Rational(1, 2); }
Rational delta_q(const PQPoint& pt) { return Rational(1, 2) - pt.inv_q; }

std::string region_name(RegionLabel label, int m) {
  switch (label) {
    case RegionLabel::A: return "A_" + std::to_string(m);
    case RegionLabel::B: return "B_" + std::to_string(m);
    case RegionLabel::C: return "C_" + std::to_string(m);
    case RegionLabel::Boundary: return "boundary";
    case RegionLabel::Outside: return "outside";
  }
  return "?";
}

RegionSet region_vertices(int m) {
  if (m < 1) throw std::domain_error("region_vertices needs m >= 1");
  Rational inv_qm = Rational(1) / q_m_of_index(m);
  Rational inv_pm = Rational(1) / p_m_of_index(m);
  Rational half(1, 2);

  RegionSet set;
  set.m = m;
  // (2,2)^dag, (1,1)^dag, (1,q_m)^dag
  set.A = {{half, half}, {Rational(1), Rational(1)}, {Rational(1), inv_qm}};
  // (inf,inf)^dag, (2,2)^dag, (p_m,inf)^dag
  set.B = {{Rational(0), Rational(0)}, {half, half}, {inv_pm, Rational(0)}};
  // hull of (p_m,inf)^dag, (1,inf)^dag, (1,q_m)^dag, (2,2)^dag  (ccw)
  set.C = {{inv_pm, Rational(0)}, {Rational(1), Rational(0)}, {Rational(1), inv_qm},
           {half, half}};
  return set;
}

namespace {

int orientation(const PQPoint& a, const PQPoint& b, const PQPoint& c) {
  Rational cross = (b.inv_p - a.inv_p) * (c.inv_q - a.inv_q) -
                   (b.inv_q - a.inv_q) * (c.inv_p - a.inv_p);
  if (cross > Rational(0)) return 1;
  if (cross < Rational(0)) return -1;
  return 0;
}

bool on_segment(const PQPoint& a, const PQPoint& b, const PQPoint& p) {
  if (orientation(a, b, p) != 0) return false;
  auto between = [](const Rational& lo, const Rational& hi, const Rational& v) {
    return (lo <= v && v <= hi) || (hi <= v && v <= lo);
  };
  return between(a.inv_p, b.inv_p, p.inv_p) && between(a.inv_q, b.inv_q, p.inv_q);
}

bool on_polygon_edge(const std::vector<PQPoint>& poly, const PQPoint& p) {
  for (std::size_t i = 0; i < poly.size(); ++i) {
    if (on_segment(poly[i], poly[(i + 1) % poly.size()], p)) return true;
  }
  return false;
}

bool strictly_inside(const std::vector<PQPoint>& poly, const PQPoint& p) {
  int sign = 0;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    int o = orientation(poly[i], poly[(i + 1) % poly.size()], p);
    if (o == 0) return false;
    if (sign == 0) sign = o;
    if (o != sign) return false;
  }
  return true;
}

}  // namespace

Region classify_pq(const PQPoint& pt, int m) {
  if (pt.inv_p < Rational(0) || pt.inv_p > Rational(1) || pt.inv_q < Rational(0) ||
      pt.inv_q > Rational(1)) {
    throw std::domain_error("classify_pq needs 1 <= p, q <= infinity");
  }
  RegionSet set = region_vertices(m);
  if (on_polygon_edge(set.A, pt) || on_polygon_edge(set.B, pt) || on_polygon_edge(set.C, pt)) {
    return {RegionLabel::Boundary, m, {}};
  }
  if (strictly_inside(set.A, pt)) return {RegionLabel::A, m, set.A};
  if (strictly_inside(set.B, pt)) return {RegionLabel::B, m, set.B};
  if (strictly_inside(set.C, pt)) return {RegionLabel::C, m, set.C};
  return {RegionLabel::Outside, m, {}};
}

SobolevOrder sobolev_order(const PQPoint& pt, int m, int n, const Rational& mu) {
  Region region = classify_pq(pt, m);
  Rational dp = delta_p(pt);
  Rational dq = delta_q(pt);
  Rational kappa = kappa_of_index(m);
  Rational nn(n);

  switch (region.label) {
    case RegionLabel::A:
      return {mu + nn * dp + dq, region.label, m, "A"};
    case RegionLabel::B:
      return {mu + nn * dq + dp, region.label, m, "B"};
    case RegionLabel::C: {
      // q <= p'  <=>  1/q >= 1 - 1/p.
      bool q_le_p_dual = pt.inv_p + pt.inv_q >= Rational(1);
      Rational shared = (dp + dq) * (Rational(1, 2) + kappa);
      if (q_le_p_dual) {
        return {mu + nn * dp + shared + (dq - dp), region.label, m, "C-q<=p'"};
      }
      return {mu + nn * dq + shared + (dp - dq), region.label, m, "C-q>p'"};
    }
    case RegionLabel::Boundary:
      throw std::domain_error(
          "boundary point: the estimates hold with an epsilon loss only");
    case RegionLabel::Outside:
      throw std::domain_error("point not covered by the L^p -> L^q exponent table");
  }
  throw std::logic_error("unreachable");
}

SobolevOrder hardy_order(const Rational& inv_q, int m, int n, const Rational& mu) {
  if (m != 1 && m != 2) throw std::domain_error("hardy_order: outside the supported range: m must be 1 or 2");
  if (inv_q > Rational(1, 2) || inv_q < Rational(0)) {
    throw std::domain_error("hardy_order needs 2 <= q <= infinity");
  }
  Rational inv_qm = Rational(1) / q_m_of_index(m);
  Rational dq = Rational(1, 2) - inv_q;
  Rational dqm = Rational(1, 2) - inv_qm;
  Rational base = mu + Rational(n, 2) + dq;
  if (inv_q == inv_qm) {
    throw std::domain_error("hardy_order: endpoint q = q_m not covered");
  }
  if (inv_q > inv_qm) {  // q < q_m
    return {base, RegionLabel::Outside, m, "hardy-subcritical"};
  }
  Rational extra = kappa_of_index(m) * (dq - dqm) / (Rational(1, 2) - dqm);
  return {base + extra, RegionLabel::Outside, m, "hardy-supercritical"};
}

HalfwaveOrders halfwave_orders(const Rational& inv_q, int n, int m) {
  if (inv_q > Rational(1, 2) || inv_q <= Rational(0)) {
    throw std::domain_error("halfwave_orders needs 2 <= q < infinity");
  }
  Rational dq = Rational(1, 2) - inv_q;
  Rational kappa = kappa_of_index(m);
  Rational uniform = Rational(n + 1) * dq;
  return {uniform, dq, uniform + Rational(2) * kappa * dq};
}

Rational predicted_lq_growth(const Rational& inv_q, int m) {
  if (inv_q > Rational(1, 2) || inv_q < Rational(0)) {
    throw std::domain_error("predicted_lq_growth needs 2 <= q <= infinity");
  }
  Rational inv_qm = Rational(1) / q_m_of_index(m);
  if (inv_q >= inv_qm) return Rational(0);  // q <= q_m
  Rational dq = Rational(1, 2) - inv_q;
  Rational dqm = Rational(1, 2) - inv_qm;
  return kappa_of_index(m) * (dq - dqm) / (Rational(1, 2) - dqm);
}

Rational duality_line_order(const Rational& inv_p, int n, int m) {
  Rational dp = inv_p - Rational(1, 2);
  return (Rational(n + 1) + Rational(2) * kappa_of_index(m)) * dp;
}

namespace {

double svg_x(const Rational& inv_p) { return inv_p.to_double() * 640.0; }
double svg_y(const Rational& inv_q) { return 640.0 - inv_q.to_double() * 640.0; }

void emit_polygon(std::ostringstream& os, const std::vector<PQPoint>& poly, const char* color) {
  os << "  <polygon points=\"";
  for (std::size_t i = 0; i < poly.size(); ++i) {
    if (i) os << " ";
    os << svg_x(poly[i].inv_p) << "," << svg_y(poly[i].inv_q);
  }
  os << "\" fill=\"" << color << "\" fill-opacity=\"0.8\" stroke=\"#222222\" "
     << "stroke-width=\"1\"/>\n";
}

}  // namespace

std::string regions_svg(int m, const std::optional<PQPoint>& query) {
  RegionSet set = region_vertices(m);
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"640\" "
     << "viewBox=\"0 0 640 640\">\n";
  os << "  <rect x=\"0\" y=\"0\" width=\"640\" height=\"640\" fill=\"#ffffff\"/>\n";
  // Unit square in (1/p, 1/q), origin bottom-left: x = 640/p', y up = 1/q.
  emit_polygon(os, set.A, "#4477aa");
  emit_polygon(os, set.B, "#66ccee");
  emit_polygon(os, set.C, "#ee6677");
  os << "  <line x1=\"0\" y1=\"640\" x2=\"640\" y2=\"0\" stroke=\"#999999\" "
     << "stroke-dasharray=\"6,4\"/>\n";  // duality line q = p'
  if (query) {
    os << "  <circle cx=\"" << svg_x(query->inv_p) << "\" cy=\"" << svg_y(query->inv_q)
       << "\" r=\"5\" fill=\"#000000\"/>\n";
  }
  os << "  <text x=\"8\" y=\"632\" font-size=\"16\">m=" << m << "</text>\n";
  os << "</svg>\n";
  return os.str();
}

}  // namespace caustics
