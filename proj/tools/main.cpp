#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "deconv/bandwidth.hpp"
#include "deconv/estimator.hpp"
#include "deconv/lower_bound.hpp"
#include "deconv/models.hpp"
#include "deconv/montecarlo.hpp"
#include "deconv/quadrature.hpp"
#include "deconv/risk_bounds.hpp"

using nlohmann::json;
using namespace deconv;

namespace {

struct GlobalOpts {
  std::string config_path;
  std::string output_path;
  std::uint64_t seed = 0;
  bool seed_set = false;
  int threads = 0;
  double slack = 0.2;
};

json load_config(const std::string& path) {
  if (path.empty()) throw ValidationError("config", "--config is required");
  std::ifstream in(path);
  if (!in) throw ValidationError("config", "cannot open config file " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ValidationError("config", std::string("invalid JSON: ") + e.what());
  }
  return j;
}

double require_number(const json& j, const std::string& scope,
                      const std::string& key) {
  if (!j.contains(key) || !j[key].is_number())
    throw ValidationError(scope + "." + key, "missing or non-numeric field");
  return j[key].get<double>();
}

std::int64_t require_integer(const json& j, const std::string& scope,
                             const std::string& key) {
  if (!j.contains(key) || !j[key].is_number_integer())
    throw ValidationError(scope + "." + key, "missing or non-integer field");
  return j[key].get<std::int64_t>();
}

std::string require_string(const json& j, const std::string& scope,
                           const std::string& key) {
  if (!j.contains(key) || !j[key].is_string())
    throw ValidationError(scope + "." + key, "missing or non-string field");
  return j[key].get<std::string>();
}

SmoothnessClass parse_class(const json& cfg) {
  if (!cfg.contains("class") || !cfg["class"].is_object())
    throw ValidationError("class", "missing 'class' object");
  const json& c = cfg["class"];
  SmoothnessClass cls{require_number(c, "class", "alpha"),
                      require_number(c, "class", "r"),
                      require_number(c, "class", "L")};
  if (!(cls.alpha > 0)) throw ValidationError("class.alpha", "must be positive");
  if (!(cls.r > 0)) throw ValidationError("class.r", "must be positive");
  if (!(cls.L > 0)) throw ValidationError("class.L", "must be positive");
  return cls;
}

std::map<std::string, double> numeric_params(const json& obj) {
  std::map<std::string, double> out;
  for (auto it = obj.begin(); it != obj.end(); ++it)
    if (it.value().is_number()) out[it.key()] = it.value().get<double>();
  return out;
}

NoiseModel parse_noise(const json& cfg) {
  if (!cfg.contains("noise") || !cfg["noise"].is_object())
    throw ValidationError("noise", "missing 'noise' object");
  const json& nj = cfg["noise"];
  return make_noise(require_string(nj, "noise", "kind"), numeric_params(nj));
}

TargetDensity parse_target(const json& cfg, const SmoothnessClass& cls) {
  if (!cfg.contains("target") || !cfg["target"].is_object())
    throw ValidationError("target", "missing 'target' object");
  const json& tj = cfg["target"];
  return make_target(require_string(tj, "target", "kind"), numeric_params(tj), cls);
}

void atomic_write(const std::string& path, const std::string& content) {
  std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write to " + tmp);
    out << content;
    if (!out) throw std::runtime_error("write failure on " + tmp);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw std::runtime_error("cannot rename " + tmp + " to " + path);
}

void emit_result(const GlobalOpts& g, const json& j) {
  std::string text = j.dump(2);
  text.push_back('\n');
  if (g.output_path.empty())
    std::cout << text;
  else
    atomic_write(g.output_path, text);
}

std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v,
                           std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

void emit_plotdata(const std::vector<std::string>& header,
                   const std::vector<std::vector<double>>& rows,
                   const std::string& path) {
  if (rows.empty()) throw ValidationError("table", "refusing to write empty table");
  std::ostringstream os;
  for (std::size_t i = 0; i < header.size(); ++i)
    os << (i ? "," : "") << header[i];
  os << '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i)
      os << (i ? "," : "") << format_double(row[i]);
    os << '\n';
  }
  if (path.empty()) throw ValidationError("output", "--output is required for CSV");
  atomic_write(path, os.str());
}

const char* equation_name(BandwidthEquation e) {
  switch (e) {
    case BandwidthEquation::HSTAR: return "hstar";
    case BandwidthEquation::HPLUS: return "hplus";
    case BandwidthEquation::ADAPTIVE: return "adaptive";
    case BandwidthEquation::ADAPTIVE_CRITICAL: return "adaptive_critical";
  }
  return "?";
}

json bandwidth_to_json(const Bandwidth& b) {
  return json{{"h", b.h},
              {"equation", equation_name(b.equation)},
              {"residual", b.residual},
              {"n", b.n}};
}

json rates_to_json(const RateValue& rv) {
  json j{{"pointwise", rv.pointwise}, {"l2", rv.l2}};
  if (std::isfinite(rv.closed_form_l2)) {
    j["closed_form_pointwise"] = rv.closed_form_pointwise;
    j["closed_form_l2"] = rv.closed_form_l2;
  }
  return j;
}

json risk_to_json(const PointRisk& p) {
  return json{{"mse", p.mse}, {"mc_se", p.mc_se}, {"bias_sq", p.bias_sq},
              {"var", p.var}};
}

int cmd_bandwidth(const GlobalOpts& g) {
  json cfg = load_config(g.config_path);
  SmoothnessClass cls = parse_class(cfg);
  NoiseModel noise = parse_noise(cfg);
  std::int64_t n = require_integer(cfg, "config", "n");
  std::string eq = cfg.value("equation", "hstar");

  Bandwidth b{0, BandwidthEquation::HSTAR, 0, n};
  if (eq == "hstar")
    b = solve_hstar(cls, noise, n);
  else if (eq == "hplus")
    b = solve_hplus(cls, noise, n);
  else if (eq == "adaptive")
    b = adaptive_bandwidth(noise, n);
  else if (eq == "adaptive_critical")
    b = adaptive_bandwidth_critical(noise, n, cfg.value("A", 1.2),
                                    cfg.value("alpha0", cls.alpha));
  else
    throw ValidationError("equation", "unknown equation '" + eq + "'");

  json out = bandwidth_to_json(b);
  out["rates"] = rates_to_json(rates(cls, noise, n));
  emit_result(g, out);
  return 0;
}

int cmd_rates(const GlobalOpts& g) {
  json cfg = load_config(g.config_path);
  SmoothnessClass cls = parse_class(cfg);
  NoiseModel noise = parse_noise(cfg);
  if (cfg.contains("n_list")) {
    std::vector<std::vector<double>> rows;
    for (const auto& nj : cfg["n_list"]) {
      std::int64_t n = nj.get<std::int64_t>();
      RateValue rv = rates(cls, noise, n);
      rows.push_back({static_cast<double>(n), rv.h_used.h, rv.pointwise, rv.l2});
    }
    emit_plotdata({"n", "hstar", "phi_sq_pointwise", "phi_sq_l2"}, rows,
                  g.output_path);
    return 0;
  }
  std::int64_t n = require_integer(cfg, "config", "n");
  RateValue rv = rates(cls, noise, n);
  json out = rates_to_json(rv);
  out["h_used"] = bandwidth_to_json(rv.h_used);
  emit_result(g, out);
  return 0;
}

int cmd_bounds(const GlobalOpts& g) {
  json cfg = load_config(g.config_path);
  SmoothnessClass cls = parse_class(cfg);
  NoiseModel noise = parse_noise(cfg);
  std::int64_t n = require_integer(cfg, "config", "n");
  double h = cfg.contains("h") ? require_number(cfg, "config", "h")
                               : solve_hstar(cls, noise, n).h;
  std::string loss_name = cfg.value("loss", "l2");
  Loss loss;
  if (loss_name == "l2")
    loss = Loss::L2;
  else if (loss_name == "pointwise")
    loss = Loss::Pointwise;
  else
    throw ValidationError("loss", "loss must be 'l2' or 'pointwise'");

  RiskReport rep = assemble_report(cls, noise, n, h, loss);
  emit_result(g, json{{"bias_sq_bound", rep.bias_sq_bound},
                      {"variance_bound", rep.variance_bound},
                      {"total_bound", rep.total_bound},
                      {"rate_phi", rep.rate_phi},
                      {"loss", loss_name},
                      {"h", rep.h},
                      {"n", rep.n},
                      {"bias_dominates", rep.bias_dominates},
                      {"slack", g.slack}});
  return 0;
}

int cmd_estimate(const GlobalOpts& g) {
  json cfg = load_config(g.config_path);
  NoiseModel noise = parse_noise(cfg);
  std::string samples_path = require_string(cfg, "config", "samples");
  std::ifstream in(samples_path);
  if (!in) throw ValidationError("samples", "cannot open " + samples_path);
  std::vector<double> samples;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    try {
      samples.push_back(std::stod(line));
    } catch (const std::exception&) {
      throw ValidationError("samples", "non-numeric line in " + samples_path);
    }
  }
  if (samples.empty()) throw ValidationError("samples", "no samples found");

  double h;
  if (cfg.contains("h")) {
    h = require_number(cfg, "config", "h");
  } else {
    SmoothnessClass cls = parse_class(cfg);
    h = solve_hstar(cls, noise, static_cast<std::int64_t>(samples.size())).h;
  }
  DensityEstimate est =
      estimate_density(samples, noise, h, Grid::standard());
  std::vector<std::vector<double>> rows;
  rows.reserve(est.values.grid.n_points);
  for (std::size_t j = 0; j < est.values.grid.n_points; ++j)
    rows.push_back({est.values.grid.x(j), est.values.values[j].real()});
  emit_plotdata({"x", "fhat"}, rows, g.output_path);
  return 0;
}

Loss parse_kind(const json& cfg) {
  std::string kind = cfg.value("kind", "pointwise");
  if (kind == "pointwise") return Loss::Pointwise;
  if (kind == "l2") return Loss::L2;
  throw ValidationError("kind", "kind must be 'pointwise' or 'l2'");
}

int cmd_lowerbound(const GlobalOpts& g, bool sweep) {
  json cfg = load_config(g.config_path);
  SmoothnessClass cls = parse_class(cfg);
  NoiseModel noise = parse_noise(cfg);
  Loss kind = parse_kind(cfg);
  double delta = cfg.value("delta", kind == Loss::Pointwise ? 0.1 : 0.25);
  double D = cfg.value("D", 2.0);
  double c0 = cfg.value("c0", 3.0);

  if (sweep) {
    if (!cfg.contains("n_list"))
      throw ValidationError("n_list", "sweep requires 'n_list'");
    std::vector<std::vector<double>> rows;
    for (const auto& nj : cfg["n_list"]) {
      std::int64_t n = nj.get<std::int64_t>();
      LowerBoundCertificate cert =
          lower_bound_certificate(cls, noise, n, kind, delta, D, c0);
      rows.push_back({static_cast<double>(n), cert.sep.measured,
                      cert.chi2.n_chi2, cert.certified_floor, cert.phi_n});
    }
    emit_plotdata({"n", "separation", "n_chi2", "certified_floor", "phi_n"}, rows,
                  g.output_path);
    return 0;
  }

  std::int64_t n = require_integer(cfg, "config", "n");
  LowerBoundCertificate cert =
      lower_bound_certificate(cls, noise, n, kind, delta, D, c0);
  emit_result(
      g, json{{"h_plus", bandwidth_to_json(cert.h_plus)},
              {"separation",
               json{{"measured", cert.sep.measured},
                    {"closed_form_floor", cert.sep.closed_form_floor},
                    {"ratio", cert.sep.ratio},
                    {"pass", cert.sep.ratio >= 1.0 - g.slack}}},
              {"chi2", json{{"chi2", cert.chi2.chi2},
                            {"n_chi2", cert.chi2.n_chi2},
                            {"t_n1", cert.chi2.t_n1},
                            {"t_n1_parseval", cert.chi2.t_n1_parseval},
                            {"t_n2", cert.chi2.t_n2}}},
              {"psi", cert.psi},
              {"gamma0", cert.gamma0},
              {"certified_floor", cert.certified_floor},
              {"phi_n", cert.phi_n},
              {"floor_over_phi", cert.floor_over_phi},
              {"f0_budget", json{{"integral", cert.f0_budget_integral},
                                 {"bound", cert.f0_budget_bound},
                                 {"pass", cert.f0_budget_pass}}}});
  return 0;
}

BandwidthRule parse_rule(const json& cfg) {
  std::string rule = cfg.value("bandwidth_rule", "hstar");
  if (rule == "hstar") return BandwidthRule::HSTAR;
  if (rule == "adaptive") return BandwidthRule::ADAPTIVE;
  if (rule == "adaptive_critical") return BandwidthRule::ADAPTIVE_CRITICAL;
  if (rule == "fixed") return BandwidthRule::FIXED;
  throw ValidationError("bandwidth_rule", "unknown rule '" + rule + "'");
}

int cmd_simulate(const GlobalOpts& g) {
  json cfg = load_config(g.config_path);
  ExperimentConfig ec{parse_target(cfg, parse_class(cfg)), parse_noise(cfg),
                      parse_class(cfg)};
  ec.n = require_integer(cfg, "config", "n");
  ec.replications = static_cast<int>(cfg.value("replications", 100));
  ec.rule = parse_rule(cfg);
  ec.critical_A = cfg.value("A", 1.2);
  ec.alpha0 = cfg.value("alpha0", 0.0);
  ec.fixed_h = cfg.value("h", 0.0);
  if (cfg.contains("eval_points")) {
    ec.eval_points.clear();
    for (const auto& x : cfg["eval_points"]) ec.eval_points.push_back(x.get<double>());
  }
  ec.master_seed = cfg.value("master_seed", std::uint64_t{1});
  if (g.seed_set) ec.master_seed = g.seed;
  ec.threads = g.threads > 0 ? g.threads : 1;

  if (cfg.contains("n_list")) {
    std::vector<std::int64_t> ns;
    for (const auto& nj : cfg["n_list"]) ns.push_back(nj.get<std::int64_t>());
    std::vector<SweepRow> rows = rate_sweep(ec, ns);
    std::vector<std::vector<double>> table;
    for (const auto& r : rows)
      table.push_back({static_cast<double>(r.n), r.risk, r.rate, r.ratio, r.mc_se});
    emit_plotdata({"n", "risk", "rate", "ratio", "mc_se"}, table, g.output_path);
    return 0;
  }

  EmpiricalRisk risk = run_experiment(ec);
  json pw = json::object();
  for (const auto& [x, p] : risk.pointwise) pw[format_double(x)] = risk_to_json(p);
  emit_result(g, json{{"l2", risk_to_json(risk.l2)},
                      {"pointwise", pw},
                      {"h_used", risk.h_used},
                      {"n", risk.n},
                      {"replications", risk.replications},
                      {"master_seed", ec.master_seed},
                      {"note", "risks are at the fixed configured density, "
                               "not the supremum over the class"}});
  return 0;
}

int cmd_selftest(const GlobalOpts& g) {
  auto expect = [](bool ok, const char* what) {
    if (!ok) throw std::runtime_error(std::string("selftest failed: ") + what);
  };
  expect(std::fabs(quadrature([](double u) { return std::exp(-2.0 * u); }, 0.0,
                              40.0, 1e-10) -
                   0.5) < 1e-9,
         "quadrature exponential integral");
  expect(std::fabs(tail_integral_asymptotic(0, 1, 1, 5) - std::exp(-5.0)) < 1e-12,
         "tail asymptotic closed form");
  NoiseModel gauss = gaussian_noise(1.0);
  expect(std::fabs(std::abs(gauss.cf(2.0)) - std::exp(-2.0)) < 1e-12,
         "gaussian noise cf");
  SmoothnessClass cls{1.0, 1.0, 1.0 / 3.141592653589793};
  Bandwidth b = solve_hstar(cls, gauss, 1000000);
  expect(std::fabs(b.residual) < 1e-10, "hstar residual");
  expect(std::fabs(two_point_risk_bound(1.0, 0.25) - 0.375) < 1e-15,
         "two point risk bound");
  DeconvKernel k = build_kernel(gauss, 0.5, Grid(1u << 12, 64.0));
  expect(std::fabs(std::abs(k.phi_k.values[1u << 11]) - 1.0) < 1e-12,
         "kernel cf at zero");
  emit_result(g, json{{"selftest", "pass"}});
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"sharp-minimax density deconvolution toolkit"};
  app.require_subcommand(1);

  GlobalOpts g;
  if (const char* env = std::getenv("DECONV_THREADS")) g.threads = std::atoi(env);
  app.add_option("--config", g.config_path, "path to JSON configuration");
  app.add_option("--output", g.output_path, "output path (written atomically)");
  auto* seed_opt = app.add_option("--seed", g.seed, "override the master seed");
  app.add_option("--threads", g.threads, "worker threads for simulation");
  app.add_option("--slack", g.slack, "slack for asymptotic comparisons");

  auto* sub_bandwidth = app.add_subcommand("bandwidth", "solve bandwidth equations");
  auto* sub_estimate = app.add_subcommand("estimate", "estimate a density from samples");
  auto* sub_bounds = app.add_subcommand("bounds", "closed-form risk bounds");
  auto* sub_lower = app.add_subcommand("lowerbound", "two-point lower bound certificate");
  bool sweep = false;
  sub_lower->add_flag("--sweep", sweep, "write a CSV over n_list");
  auto* sub_simulate = app.add_subcommand("simulate", "Monte Carlo risk experiment");
  auto* sub_rates = app.add_subcommand("rates", "sharp minimax rates");
  auto* sub_selftest = app.add_subcommand("selftest", "quick internal checks");
  // accept the shared --config/--output/... flags after the subcommand name
  for (CLI::App* s : {sub_bandwidth, sub_estimate, sub_bounds, sub_lower,
                      sub_simulate, sub_rates, sub_selftest})
    s->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }
  g.seed_set = seed_opt->count() > 0;

  try {
    if (sub_bandwidth->parsed()) return cmd_bandwidth(g);
    if (sub_estimate->parsed()) return cmd_estimate(g);
    if (sub_bounds->parsed()) return cmd_bounds(g);
    if (sub_lower->parsed()) return cmd_lowerbound(g, sweep);
    if (sub_simulate->parsed()) return cmd_simulate(g);
    if (sub_rates->parsed()) return cmd_rates(g);
    if (sub_selftest->parsed()) return cmd_selftest(g);
  } catch (const ValidationError& e) {
    std::cerr << "validation error: " << e.field << ": " << e.what() << "\n";
    return 1;
  } catch (const QuadratureError& e) {
    std::cerr << "numerical error: " << e.what()
              << " (best estimate " << e.best_estimate << ")\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return 2;
  }
  return 1;
}
