// caustic-bench: classify caustic points, evaluate oscillatory integrals,
// query the exponent tables, run scaling sweeps, and verify the whole
// scenario suite.  Flags can also come from a plain "key = value" file via
// --config; explicit flags win.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "caustic_bench/estimates.hpp"
#include "caustic_bench/exponents.hpp"
#include "caustic_bench/harness.hpp"
#include "caustic_bench/oscillatory.hpp"
#include "caustic_bench/phase.hpp"

namespace {

using caustics::Rational;
using nlohmann::ordered_json;

std::vector<double> parse_csv_doubles(const std::string& text) {
  std::vector<double> out;
  if (text.empty()) return out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(std::stod(item));
  return out;
}

caustics::PhaseFunction resolve_phase(const std::string& spec) {
  if (spec == "fold") return caustics::make_model_phase(1);
  if (spec == "cusp") return caustics::make_model_phase(2);
  if (spec.rfind("model:", 0) == 0) {
    return caustics::make_model_phase(std::stoi(spec.substr(6)));
  }
  return caustics::make_phase_from_expr(spec);
}

// Ladder endpoints are written as powers of two: "2^12", "2^-4", or a plain
// power-of-two value like "4096".
int parse_pow2(const std::string& text) {
  if (text.rfind("2^", 0) == 0) return std::stoi(text.substr(2));
  double v = std::stod(text);
  double l = std::log2(v);
  double r = std::round(l);
  if (std::abs(l - r) > 1e-9) throw std::domain_error("'" + text + "' is not a power of two");
  return static_cast<int>(r);
}

std::string apply_config(const std::map<std::string, std::string>& cfg, const std::string& key,
                         const std::string& current, bool given) {
  if (given) return current;
  auto it = cfg.find(key);
  return it == cfg.end() ? current : it->second;
}

int run_classify(const std::string& phase_spec, const std::string& x_csv,
                 const std::string& alpha_csv) {
  caustics::PhaseFunction phase = resolve_phase(phase_spec);
  std::vector<double> x = parse_csv_doubles(x_csv);
  std::vector<double> alpha = parse_csv_doubles(alpha_csv);
  caustics::CausticProfile prof = caustics::classify_caustic(phase, x, alpha);

  ordered_json j;
  j["corank"] = prof.corank;
  if (prof.index_m) {
    j["index_m"] = *prof.index_m;
  } else {
    j["index_m"] = nullptr;
  }
  j["kappa"] = prof.kappa.str();
  if (prof.q_m) j["q_m"] = prof.q_m->str();
  if (prof.p_m) j["p_m"] = prof.p_m->str();
  j["x"] = prof.x;
  j["alpha"] = prof.alpha;
  std::cout << j.dump() << "\n";
  return 0;
}

ordered_json pq_json(const caustics::PQPoint& pt) {
  return ordered_json::array({pt.inv_p.str(), pt.inv_q.str()});
}

int run_regions(int m, const std::string& p, const std::string& q, const std::string& svg_path) {
  caustics::RegionSet set = caustics::region_vertices(m);
  ordered_json j;
  j["m"] = m;
  j["q_m"] = caustics::q_m_of_index(m).str();
  j["p_m"] = caustics::p_m_of_index(m).str();
  std::optional<caustics::PQPoint> query;
  if (!p.empty() || !q.empty()) {
    if (p.empty() || q.empty()) throw std::domain_error("--p and --q must be given together");
    query = caustics::PQPoint{caustics::inv_exponent(p), caustics::inv_exponent(q)};
    caustics::Region region = caustics::classify_pq(*query, m);
    j["region"] = caustics::region_name(region.label, m);
  }
  auto poly_json = [&](const std::vector<caustics::PQPoint>& poly) {
    ordered_json arr = ordered_json::array();
    for (const auto& v : poly) arr.push_back(pq_json(v));
    return arr;
  };
  j["A"] = poly_json(set.A);
  j["B"] = poly_json(set.B);
  j["C"] = poly_json(set.C);
  if (!svg_path.empty()) {
    std::ofstream out(svg_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + svg_path);
    out << caustics::regions_svg(m, query);
    j["svg"] = svg_path;
  }
  std::cout << j.dump() << "\n";
  return 0;
}

int run_integrate(const std::string& phase_spec, const std::string& x_csv, double tau) {
  caustics::PhaseFunction phase = resolve_phase(phase_spec);
  std::vector<double> x = parse_csv_doubles(x_csv);
  caustics::OscIntegrand integrand;
  integrand.phase = &phase;
  integrand.x = x;
  integrand.tau = tau;
  caustics::BumpPair bumps;
  integrand.amplitude = [&bumps](double a) { return bumps.rho(a); };
  integrand.prefactor = std::pow(tau, 0.5 * phase.n_alpha());
  caustics::QuadratureResult res = caustics::integrate_osc(integrand, 1e-8);
  ordered_json j;
  j["re"] = res.value.real();
  j["im"] = res.value.imag();
  j["abs"] = std::abs(res.value);
  j["err_estimate"] = res.abs_error_estimate;
  j["panels"] = res.panels_used;
  std::cout << j.dump() << "\n";
  return 0;
}

int run_sweep_cmd(caustics::SweepConfig cfg, const std::string& out_path) {
  caustics::SweepOutcome outcome = caustics::run_sweep(cfg);
  std::string csv = caustics::sweep_csv(outcome.rows);
  if (!out_path.empty()) {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + out_path);
    out << csv;
  } else {
    std::cout << csv;
  }
  caustics::ScenarioInfo info = caustics::scenario_info(cfg.scenario, cfg.fixed);
  ordered_json j;
  j["scenario"] = cfg.scenario;
  j["slope"] = outcome.fit.slope;
  j["intercept"] = outcome.fit.intercept;
  j["r2"] = outcome.fit.r_squared;
  j["predicted"] = info.predicted.str();
  j["retrenched"] = outcome.fit.retrenched;
  std::cerr << j.dump() << "\n";
  return 0;
}

int run_verify(const std::string& suite, const std::string& out_path, std::uint64_t seed) {
  std::vector<caustics::SweepConfig> configs = caustics::suite_configs(suite, seed);
  std::vector<caustics::Report> reports;
  bool all_pass = true;
  for (const auto& cfg : configs) {
    caustics::Report report = caustics::verify(cfg);
    all_pass = all_pass && report.pass;
    std::ostringstream tag;
    tag << report.scenario;
    for (const auto& [k, v] : cfg.fixed) tag << " " << k << "=" << v;
    std::printf("[%s] %-28s slope=%+0.4f predicted=%s r2=%.4f (%.1fs)\n",
                report.pass ? "PASS" : "FAIL", tag.str().c_str(), report.fitted.slope,
                report.predicted.str().c_str(), report.fitted.r_squared,
                report.runtime_seconds);
    std::fflush(stdout);
    reports.push_back(std::move(report));
  }
  if (!out_path.empty()) {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + out_path);
    out << caustics::reports_json(reports) << "\n";
  }
  return all_pass ? 0 : 1;
}

int run_orders(const std::string& theorem, const std::string& p, const std::string& q, int n,
               int m, const std::string& mu) {
  Rational mu_r = mu.empty() ? Rational(0) : Rational::parse(mu);
  ordered_json j;
  if (theorem == "3.7" || theorem == "lp-lq") {
    caustics::PQPoint pt{caustics::inv_exponent(p), caustics::inv_exponent(q)};
    caustics::SobolevOrder order = caustics::sobolev_order(pt, m, n, mu_r);
    j["order"] = order.order.str();
    j["region"] = caustics::region_name(order.region, m);
    j["formula"] = order.formula_id;
  } else if (theorem == "3.9" || theorem == "hardy") {
    caustics::SobolevOrder order = caustics::hardy_order(caustics::inv_exponent(q), m, n, mu_r);
    j["order"] = order.order.str();
    j["formula"] = order.formula_id;
  } else if (theorem == "6.2" || theorem == "halfwave") {
    caustics::HalfwaveOrders hw = caustics::halfwave_orders(caustics::inv_exponent(q), n, m);
    j["uniform"] = hw.uniform_order.str();
    j["blowup"] = hw.blowup_exponent.str();
    j["robust"] = hw.robust_order.str();
  } else {
    throw std::domain_error("unknown exponent table: " + theorem);
  }
  std::cout << j.dump() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"caustic-bench: caustic scaling laws, measured and verified"};
  app.require_subcommand(1);

  std::string config_path;
  app.add_option("--config", config_path, "key = value configuration file");

  // classify
  auto* classify = app.add_subcommand("classify", "classify a stationary point");
  std::string cl_phase = "fold", cl_x, cl_alpha = "0";
  classify->add_option("--phase", cl_phase, "fold | cusp | model:<m> | expression");
  classify->add_option("--x", cl_x, "base point, comma separated");
  classify->add_option("--alpha", cl_alpha, "angular point, comma separated");

  // regions
  auto* regions = app.add_subcommand("regions", "exponent-plane regions");
  int rg_m = 1;
  std::string rg_p, rg_q, rg_svg;
  regions->add_option("--m", rg_m, "caustic index");
  regions->add_option("--p", rg_p, "Lebesgue exponent p (rational or inf)");
  regions->add_option("--q", rg_q, "Lebesgue exponent q (rational or inf)");
  regions->add_option("--svg", rg_svg, "write the region diagram to this path");

  // integrate
  auto* integrate = app.add_subcommand("integrate", "evaluate u_tau(x)");
  std::string in_phase = "fold", in_x;
  double in_tau = 1024.0;
  integrate->add_option("--phase", in_phase, "fold | cusp | model:<m> | expression");
  integrate->add_option("--x", in_x, "base point, comma separated");
  integrate->add_option("--tau", in_tau, "large parameter tau >= 1");

  // sweep
  auto* sweep = app.add_subcommand("sweep", "run one scaling sweep");
  std::string sw_scenario, sw_min, sw_max, sw_q, sw_out;
  int sw_m = 0, sw_lambda_log2 = 0;
  std::uint64_t sw_seed = 42;
  sweep->add_option("--scenario", sw_scenario, "scenario id");
  sweep->add_option("--min", sw_min, "ladder minimum, e.g. 2^6");
  sweep->add_option("--max", sw_max, "ladder maximum, e.g. 2^16");
  sweep->add_option("--q", sw_q, "Lebesgue exponent for fold-lq");
  sweep->add_option("--m", sw_m, "vanishing order / caustic index");
  sweep->add_option("--lambda-log2", sw_lambda_log2, "log2 of the fixed lambda");
  sweep->add_option("--out", sw_out, "CSV output path (default: stdout)");
  sweep->add_option("--seed", sw_seed, "seed for randomized grids");

  // verify
  auto* verify = app.add_subcommand("verify", "verify scenarios against predictions");
  std::string vf_suite = "all", vf_out;
  std::uint64_t vf_seed = 42;
  verify->add_option("--suite", vf_suite, "all or a scenario id");
  verify->add_option("--out", vf_out, "JSON report path");
  verify->add_option("--seed", vf_seed, "seed for randomized grids");

  // orders
  auto* orders = app.add_subcommand("orders", "query the exponent tables");
  std::string or_theorem = "3.7", or_p, or_q, or_mu;
  int or_n = 2, or_m = 1;
  orders->add_option("--theorem", or_theorem, "3.7 | 3.9 | 6.2");
  orders->add_option("--p", or_p, "Lebesgue exponent p");
  orders->add_option("--q", or_q, "Lebesgue exponent q");
  orders->add_option("--n", or_n, "dimension");
  orders->add_option("--m", or_m, "caustic index");
  orders->add_option("--mu", or_mu, "operator order (rational)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n\n" << app.help() << "\n";
    return 2;
  }

  try {
    std::map<std::string, std::string> cfg;
    if (!config_path.empty()) cfg = caustics::parse_config_file(config_path);

    if (classify->parsed()) {
      cl_phase = apply_config(cfg, "phase", cl_phase, classify->count("--phase") > 0);
      cl_x = apply_config(cfg, "x", cl_x, classify->count("--x") > 0);
      cl_alpha = apply_config(cfg, "alpha", cl_alpha, classify->count("--alpha") > 0);
      return run_classify(cl_phase, cl_x, cl_alpha);
    }
    if (regions->parsed()) {
      return run_regions(rg_m, rg_p, rg_q, rg_svg);
    }
    if (integrate->parsed()) {
      return run_integrate(in_phase, in_x, in_tau);
    }
    if (sweep->parsed()) {
      sw_scenario = apply_config(cfg, "scenario", sw_scenario, sweep->count("--scenario") > 0);
      sw_min = apply_config(cfg, "min", sw_min, sweep->count("--min") > 0);
      sw_max = apply_config(cfg, "max", sw_max, sweep->count("--max") > 0);
      sw_q = apply_config(cfg, "q", sw_q, sweep->count("--q") > 0);
      sw_out = apply_config(cfg, "out", sw_out, sweep->count("--out") > 0);
      if (sweep->count("--seed") == 0 && cfg.count("seed")) sw_seed = std::stoull(cfg.at("seed"));
      if (sweep->count("--m") == 0 && cfg.count("m")) sw_m = std::stoi(cfg.at("m"));
      if (sweep->count("--lambda-log2") == 0 && cfg.count("lambda-log2")) {
        sw_lambda_log2 = std::stoi(cfg.at("lambda-log2"));
      }
      if (sw_scenario.empty()) throw std::domain_error("sweep needs --scenario");

      caustics::SweepConfig swcfg;
      swcfg.scenario = sw_scenario;
      if (!sw_min.empty()) swcfg.ladder_min_log2 = parse_pow2(sw_min);
      if (!sw_max.empty()) swcfg.ladder_max_log2 = parse_pow2(sw_max);
      if ((sw_min.empty()) != (sw_max.empty())) {
        throw std::domain_error("--min and --max must be given together");
      }
      if (!sw_q.empty()) {
        swcfg.fixed["q"] = (Rational(1) / caustics::inv_exponent(sw_q)).to_double();
      }
      if (sw_m > 0) swcfg.fixed["m"] = sw_m;
      if (sw_lambda_log2 > 0) swcfg.fixed["lambda_log2"] = sw_lambda_log2;
      swcfg.seed = sw_seed;
      return run_sweep_cmd(swcfg, sw_out);
    }
    if (verify->parsed()) {
      vf_suite = apply_config(cfg, "suite", vf_suite, verify->count("--suite") > 0);
      vf_out = apply_config(cfg, "out", vf_out, verify->count("--out") > 0);
      if (verify->count("--seed") == 0 && cfg.count("seed")) vf_seed = std::stoull(cfg.at("seed"));
      return run_verify(vf_suite, vf_out, vf_seed);
    }
    if (orders->parsed()) {
      return run_orders(or_theorem, or_p, or_q, or_n, or_m, or_mu);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
