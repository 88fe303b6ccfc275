// Python bindings for the caustic workbench: phases and classification,
// cutoffs, oscillatory integrals, estimators, the exact exponent calculus,
// and the sweep harness.

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "caustic_bench/bump.hpp"
#include "caustic_bench/dyadic.hpp"
#include "caustic_bench/estimates.hpp"
#include "caustic_bench/exponents.hpp"
#include "caustic_bench/harness.hpp"
#include "caustic_bench/oscillatory.hpp"
#include "caustic_bench/phase.hpp"
#include "caustic_bench/reduction.hpp"

namespace py = pybind11;
using namespace caustics;

namespace {

py::dict profile_to_dict(const CausticProfile& prof) {
  py::dict d;
  d["corank"] = prof.corank;
  d["index_m"] = prof.index_m ? py::cast(*prof.index_m) : py::none();
  d["kappa"] = prof.kappa.str();
  d["q_m"] = prof.q_m ? py::cast(prof.q_m->str()) : py::none();
  d["p_m"] = prof.p_m ? py::cast(prof.p_m->str()) : py::none();
  d["x"] = prof.x;
  d["alpha"] = prof.alpha;
  return d;
}

PQPoint pq_from_text(const std::string& p, const std::string& q) {
  return {inv_exponent(p), inv_exponent(q)};
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "caustic-bench core: oscillatory integrals, caustic classification, "
            "dyadic pieces, and the exponent calculus";

  py::class_<PhaseFunction>(m, "PhaseFunction")
      .def_property_readonly("n_x", &PhaseFunction::n_x)
      .def_property_readonly("n_alpha", &PhaseFunction::n_alpha)
      .def("__call__",
           [](const PhaseFunction& ph, std::vector<double> x, std::vector<double> a) {
             return ph.eval(x, a);
           },
           py::arg("x"), py::arg("alpha"));

  m.def("make_model_phase", &make_model_phase, py::arg("m"),
        "The A_{m+1} model phase a^{m+2} + x1 a^m + ... + x_m a + x_{m+1}");
  m.def("phase_from_expr", &make_phase_from_expr, py::arg("expr"),
        "Parse a phase from the plain-text grammar, e.g. 'a^3 + x1*a + x2'");

  m.def("eval_derivative",
        [](const PhaseFunction& ph, std::vector<double> x, std::vector<double> a,
           std::vector<int> mi) { return eval_derivative(ph, x, a, mi); },
        py::arg("phase"), py::arg("x"), py::arg("alpha"), py::arg("multi_index"));
  m.def("caustic_distance",
        [](const PhaseFunction& ph, std::vector<double> x, std::vector<double> a) {
          return caustic_distance(ph, x, a);
        },
        py::arg("phase"), py::arg("x"), py::arg("alpha"));
  m.def("find_stationary_points",
        [](const PhaseFunction& ph, std::vector<double> x, double lo, double hi) {
          std::vector<std::pair<double, int>> out;
          for (const auto& s : find_stationary_points(ph, x, lo, hi)) {
            out.push_back({s.alpha, s.multiplicity});
          }
          return out;
        },
        py::arg("phase"), py::arg("x"), py::arg("lo") = -2.0, py::arg("hi") = 2.0,
        "Roots of dPhi/da with multiplicity markers");
  m.def("classify_caustic",
        [](const PhaseFunction& ph, std::vector<double> x, std::vector<double> a) {
          return profile_to_dict(classify_caustic(ph, x, a));
        },
        py::arg("phase"), py::arg("x"), py::arg("alpha"));

  m.def("schur_determinant",
        [](const Eigen::MatrixXd& A, const Eigen::MatrixXd& B, const Eigen::MatrixXd& C,
           const Eigen::MatrixXd& D) { return schur_determinant({A, B, C, D}); },
        py::arg("A"), py::arg("B"), py::arg("C"), py::arg("D"),
        "Both sides of det(A - B D^{-1} C) det D = det [[A,B],[C,D]]");

  py::class_<BumpPair>(m, "BumpPair")
      .def(py::init<>())
      .def("rho", &BumpPair::rho)
      .def("beta", &BumpPair::beta);
  m.def("partition_residual",
        [](double t, int j_max) { return partition_residual(BumpPair(), t, j_max); },
        py::arg("t"), py::arg("j_max"));

  m.def("sigma0",
        [](std::uint64_t lambda, int mm) {
          Sigma0 s = sigma0(lambda, mm);
          return std::pair<int, double>{s.j0, s.sigma0};
        },
        py::arg("lambda_"), py::arg("m"));
  m.def("enumerate_pieces",
        [](std::uint64_t lambda_max, int mm) {
          std::vector<std::string> out;
          for (const auto& p : enumerate_pieces(lambda_max, mm)) out.push_back(p.str());
          return out;
        },
        py::arg("lambda_max"), py::arg("m"));

  m.def("u_tau",
        [](const PhaseFunction& ph, std::vector<double> x, double tau) {
          return u_tau(ph, x, tau);
        },
        py::arg("phase"), py::arg("x"), py::arg("tau"));
  m.def("airy", &airy, py::arg("s"), "Airy Ai by its Maclaurin series, |s| <= 10");
  m.def("piece_kernel",
        [](const PhaseFunction& ph, double lambda, double sigma, bool tilde, int sign,
           std::vector<double> x) {
          BumpPair bumps;
          PieceSpec spec{lambda, sigma, tilde ? PieceCut::Tilde : PieceCut::Signed, sign};
          return piece_kernel_at(ph, spec, x, bumps);
        },
        py::arg("phase"), py::arg("lambda_"), py::arg("sigma"), py::arg("tilde"),
        py::arg("sign"), py::arg("x"));

  m.def("sublevel_measure",
        [](std::vector<double> coeffs, double lambda, double sigma, double gamma, double lo,
           double hi) { return sublevel_measure(Poly1(std::move(coeffs)), lambda, sigma, gamma, lo, hi); },
        py::arg("coeffs"), py::arg("lambda_"), py::arg("sigma"), py::arg("gamma"),
        py::arg("lo") = -2.0, py::arg("hi") = 2.0,
        "Polynomial coefficients are ascending");
  m.def("vanishing_integral",
        [](std::vector<double> coeffs, double sigma) {
          return vanishing_integral(Poly1(std::move(coeffs)), sigma, BumpPair(), -2.0, 2.0);
        },
        py::arg("coeffs"), py::arg("sigma"));

  m.def("region_vertices",
        [](int mm) {
          RegionSet set = region_vertices(mm);
          auto poly = [](const std::vector<PQPoint>& v) {
            std::vector<std::pair<std::string, std::string>> out;
            for (const auto& pt : v) out.push_back({pt.inv_p.str(), pt.inv_q.str()});
            return out;
          };
          py::dict d;
          d["m"] = mm;
          d["A"] = poly(set.A);
          d["B"] = poly(set.B);
          d["C"] = poly(set.C);
          return d;
        },
        py::arg("m"));
  m.def("classify_pq",
        [](const std::string& p, const std::string& q, int mm) {
          return region_name(classify_pq(pq_from_text(p, q), mm).label, mm);
        },
        py::arg("p"), py::arg("q"), py::arg("m"));
  m.def("sobolev_order",
        [](const std::string& p, const std::string& q, int mm, int n, const std::string& mu) {
          SobolevOrder o = sobolev_order(pq_from_text(p, q), mm, n, Rational::parse(mu));
          py::dict d;
          d["order"] = o.order.str();
          d["region"] = region_name(o.region, mm);
          d["formula"] = o.formula_id;
          return d;
        },
        py::arg("p"), py::arg("q"), py::arg("m"), py::arg("n"), py::arg("mu") = "0");
  m.def("hardy_order",
        [](const std::string& q, int mm, int n, const std::string& mu) {
          return hardy_order(inv_exponent(q), mm, n, Rational::parse(mu)).order.str();
        },
        py::arg("q"), py::arg("m"), py::arg("n"), py::arg("mu") = "0");
  m.def("halfwave_orders",
        [](const std::string& q, int n, int mm) {
          HalfwaveOrders o = halfwave_orders(inv_exponent(q), n, mm);
          py::dict d;
          d["uniform"] = o.uniform_order.str();
          d["blowup"] = o.blowup_exponent.str();
          d["robust"] = o.robust_order.str();
          return d;
        },
        py::arg("q"), py::arg("n"), py::arg("m"));
  m.def("predicted_lq_growth",
        [](const std::string& q, int mm) { return predicted_lq_growth(inv_exponent(q), mm).str(); },
        py::arg("q"), py::arg("m"));
  m.def("regions_svg", [](int mm) { return regions_svg(mm); }, py::arg("m"));

  m.def("scenario_ids", &scenario_ids);
  m.def("run_sweep",
        [](const std::string& scenario, std::map<std::string, double> fixed, int min_log2,
           int max_log2, std::uint64_t seed) {
          SweepConfig cfg;
          cfg.scenario = scenario;
          cfg.fixed = std::move(fixed);
          cfg.ladder_min_log2 = min_log2;
          cfg.ladder_max_log2 = max_log2;
          cfg.seed = seed;
          SweepOutcome out = run_sweep(cfg);
          py::dict d;
          std::vector<std::pair<double, double>> rows;
          for (const auto& r : out.rows) rows.push_back({r.param_log2, r.value});
          d["rows"] = rows;
          d["slope"] = out.fit.slope;
          d["intercept"] = out.fit.intercept;
          d["r2"] = out.fit.r_squared;
          d["extras_pass"] = out.extras_pass;
          return d;
        },
        py::arg("scenario"), py::arg("fixed") = std::map<std::string, double>{},
        py::arg("min_log2") = 0, py::arg("max_log2") = 0, py::arg("seed") = 42);
  m.def("verify",
        [](const std::string& scenario, std::map<std::string, double> fixed,
           std::uint64_t seed) {
          SweepConfig cfg;
          cfg.scenario = scenario;
          cfg.fixed = std::move(fixed);
          cfg.seed = seed;
          Report r = verify(cfg);
          py::dict d;
          d["scenario"] = r.scenario;
          d["predicted"] = r.predicted.str();
          d["fitted"] = r.fitted.slope;
          d["r2"] = r.fitted.r_squared;
          d["pass"] = r.pass;
          d["citation"] = r.citation;
          d["seed"] = r.seed;
          d["runtime_s"] = r.runtime_seconds;
          return d;
        },
        py::arg("scenario"), py::arg("fixed") = std::map<std::string, double>{},
        py::arg("seed") = 42);

#ifdef VERSION_INFO
  m.attr("__version__") = VERSION_INFO;
#else
  m.attr("__version__") = "0.1.0";
#endif
}
