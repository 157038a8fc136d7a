#include "deconv/models.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "deconv/quadrature.hpp"
#include "deconv/rng.hpp"

namespace deconv {

namespace {

constexpr double kPi = std::numbers::pi;

double get_param(const std::map<std::string, double>& params,
                 const std::string& key, const std::string& field) {
  auto it = params.find(key);
  if (it == params.end())
    throw ValidationError(field, "missing required parameter " + field);
  return it->second;
}

void validate_class(const SmoothnessClass& cls) {
  if (!(cls.alpha > 0)) throw ValidationError("class.alpha", "alpha must be positive");
  if (!(cls.r > 0)) throw ValidationError("class.r", "r must be positive");
  if (!(cls.L > 0)) throw ValidationError("class.L", "L must be positive");
}

/// Shared tail of target construction: membership gate, density grid by cf
/// inversion, and the basic density invariants.
TargetDensity finish_target(TargetDensity t) {
  validate_class(t.declared_class);
  MembershipReport mem = class_membership(t.cf, t.declared_class);
  if (!mem.pass) {
    std::ostringstream os;
    os << "target rejected: class membership " << mem.detail
       << " (integral " << mem.integral << ", bound " << mem.bound << ")";
    throw ModelError(os.str());
  }
  GriddedFunction phi = sample_frequency(Grid::standard(), t.cf);
  t.density_grid = inverse_transform(phi);

  double mass = grid_integral(t.density_grid);
  if (std::fabs(mass - 1.0) > 1e-6)
    throw ModelError("target density mass off by more than 1e-6");
  for (const auto& v : t.density_grid.values)
    if (v.real() < -1e-10)
      throw ModelError("target density negative beyond tolerance");
  return t;
}

}  // namespace

NoiseModel gaussian_noise(double sigma) {
  if (!(sigma > 0)) throw ValidationError("noise.sigma", "sigma must be positive");
  NoiseModel m;
  m.kind = "gaussian";
  m.params = {{"sigma", sigma}};
  m.cf = [sigma](double u) -> std::complex<double> {
    return std::exp(-0.5 * sigma * sigma * u * u);
  };
  m.sampler = [sigma](std::size_t count, std::uint64_t seed) {
    Rng g(seed);
    std::vector<double> out(count);
    for (auto& x : out) x = sigma * g.normal();
    return out;
  };
  m.beta = 0.5 * sigma * sigma;
  m.s = 2.0;
  return m;
}

NoiseModel stable_noise(double s, double c) {
  if (!(s > 0) || s > 2) throw ValidationError("noise.s", "s must lie in (0, 2]");
  if (!(c > 0)) throw ValidationError("noise.c", "c must be positive");
  NoiseModel m;
  m.kind = "stable";
  m.params = {{"s", s}, {"c", c}};
  m.cf = [s, c](double u) -> std::complex<double> {
    return std::exp(-std::pow(std::fabs(c * u), s));
  };
  m.sampler = [s, c](std::size_t count, std::uint64_t seed) {
    Rng g(seed);
    std::vector<double> out(count);
    for (auto& x : out) x = c * g.stable(s);
    return out;
  };
  m.beta = std::pow(c, s);
  m.s = s;
  return m;
}

NoiseModel noiseless_model() {
  NoiseModel m;
  m.kind = "noiseless";
  m.cf = [](double) -> std::complex<double> { return 1.0; };
  m.sampler = [](std::size_t count, std::uint64_t) {
    return std::vector<double>(count, 0.0);
  };
  m.beta = 0.0;
  m.s = 1.0;
  return m;
}

EnvelopeReport cf_envelope_check(const NoiseModel& m, double u_lo, double u_hi,
                                 int n_test) {
  if (!(u_lo >= m.u0) || !(u_hi > u_lo) || n_test < 2)
    throw ValidationError("envelope", "require u0 <= u_lo < u_hi, n_test >= 2");

  EnvelopeReport rep{true, 0.0, ""};
  const double log_ratio = std::log(u_hi / u_lo);
  for (int i = 0; i < n_test; ++i) {
    double u = u_lo * std::exp(log_ratio * i / (n_test - 1));
    double mod = std::abs(m.cf(u));
    if (mod < 1e-300)
      throw ModelError("cf vanishes at u = " + std::to_string(u));
    double env = std::exp(-m.beta * std::pow(u, m.s));
    double lower = m.b_min * std::pow(u, m.gamma) * env / mod;
    double upper = mod / (m.b_max * std::pow(u, m.gamma_prime) * env);
    rep.worst_ratio = std::max({rep.worst_ratio, lower, upper});
    if (lower > 1.0 + 1e-9 || upper > 1.0 + 1e-9) {
      rep.pass = false;
      if (rep.detail.empty())
        rep.detail = (upper > lower ? "upper" : "lower") +
                     std::string(" envelope violated at u = ") + std::to_string(u);
    }

    if (m.has_nd) {
      double du = 1e-4 * u;
      std::complex<double> fp = m.cf(u + du), fc = m.cf(u), fm = m.cf(u - du);
      double d1 = std::abs(fp - fm) / (2.0 * du);
      double d2 = std::abs(fp - 2.0 * fc + fm) / (du * du);
      double bound = m.nd_B * std::pow(u, m.nd_gamma1) * env;
      double nd_ratio = std::max(d1, d2) / bound;
      rep.worst_ratio = std::max(rep.worst_ratio, nd_ratio);
      // slack covers the finite-difference truncation error
      if (nd_ratio > 1.0 + 1e-3) {
        rep.pass = false;
        if (rep.detail.empty())
          rep.detail = "derivative bound violated at u = " + std::to_string(u);
      }
    }
  }
  return rep;
}

MembershipReport class_membership(const CfFunction& cf, const SmoothnessClass& cls,
                                  double tol) {
  validate_class(cls);
  const double alpha = cls.alpha, r = cls.r;
  auto w = [&](double u) {
    double mod = std::abs(cf(u));
    double v = mod * mod * std::exp(2.0 * alpha * std::pow(u, r));
    return std::isfinite(v) ? v : 1e300;
  };

  // a divergent weight can defeat any absolute tolerance; the best estimate
  // is still good enough to recognize growth across doublings
  auto quad_best = [](const std::function<double(double)>& f, double a, double b,
                      double tol) {
    try {
      return quadrature(f, a, b, tol);
    } catch (const QuadratureError& e) {
      return e.best_estimate;
    }
  };

  MembershipReport rep{};
  rep.bound = 2.0 * kPi * cls.L;
  double total = 2.0 * quad_best(w, 0.0, 8.0, 1e-12);
  double prev_inc = std::numeric_limits<double>::infinity();
  bool settled = false;
  for (double lo = 8.0; lo < 512.0; lo *= 2.0) {
    double inc = 2.0 * quad_best(w, lo, 2.0 * lo, 1e-13);
    total += inc;
    if (inc > prev_inc && inc > 1e-12) {
      rep.divergent = true;
      rep.detail = "increments grow across truncation doublings";
      break;
    }
    if (inc < 1e-12 * std::max(total, 1.0)) {
      settled = true;
      break;
    }
    prev_inc = inc;
  }
  rep.integral = total;
  if (!rep.divergent && !settled) {
    rep.divergent = true;
    rep.detail = "weighted integral did not settle by the truncation cap";
  }
  rep.pass = !rep.divergent && total <= rep.bound * (1.0 + tol);
  if (rep.detail.empty() && !rep.pass) rep.detail = "integral exceeds 2 pi L";
  return rep;
}

double sup_density_bound(const SmoothnessClass& cls) {
  validate_class(cls);
  double C = quadrature_to_inf(
      [&](double u) { return std::exp(-2.0 * cls.alpha * std::pow(u, cls.r)); }, 0.0,
      1e-12);
  return cls.L + C / kPi;
}

double stable_density(double r, double x) {
  if (!(r > 0) || r > 2) throw ValidationError("target.r", "r must lie in (0, 2]");
  const double ax = std::fabs(x);
  double val = quadrature_to_inf(
      [&](double t) { return std::exp(-std::pow(t, r)) * std::cos(t * ax); }, 0.0,
      1e-11);
  return std::max(val / kPi, 0.0);
}

TargetDensity make_cauchy_target(double scale, const SmoothnessClass& cls) {
  if (!(scale > 0)) throw ValidationError("target.scale", "scale must be positive");
  TargetDensity t;
  t.kind = "cauchy";
  t.params = {{"scale", scale}};
  t.declared_class = cls;
  t.cf = [scale](double u) -> std::complex<double> {
    return std::exp(-scale * std::fabs(u));
  };
  t.density = [scale](double x) { return scale / (kPi * (x * x + scale * scale)); };
  t.sampler = [scale](std::size_t count, std::uint64_t seed) {
    Rng g(seed);
    std::vector<double> out(count);
    for (auto& x : out) x = scale * g.cauchy();
    return out;
  };
  return finish_target(std::move(t));
}

TargetDensity make_gaussian_target(double sigma, const SmoothnessClass& cls) {
  if (!(sigma > 0)) throw ValidationError("target.sigma", "sigma must be positive");
  TargetDensity t;
  t.kind = "gaussian";
  t.params = {{"sigma", sigma}};
  t.declared_class = cls;
  t.cf = [sigma](double u) -> std::complex<double> {
    return std::exp(-0.5 * sigma * sigma * u * u);
  };
  t.density = [sigma](double x) {
    return std::exp(-0.5 * x * x / (sigma * sigma)) / (sigma * std::sqrt(2.0 * kPi));
  };
  t.sampler = [sigma](std::size_t count, std::uint64_t seed) {
    Rng g(seed);
    std::vector<double> out(count);
    for (auto& x : out) x = sigma * g.normal();
    return out;
  };
  return finish_target(std::move(t));
}

TargetDensity make_stable_target(double r, double c0, const SmoothnessClass& cls) {
  if (!(r > 0) || r > 2) throw ValidationError("target.r", "r must lie in (0, 2]");
  if (!(c0 > 0)) throw ValidationError("target.c0", "c0 must be positive");
  TargetDensity t;
  t.kind = "stable";
  t.params = {{"r", r}, {"c0", c0}};
  t.declared_class = cls;
  t.cf = [r, c0](double u) -> std::complex<double> {
    return std::exp(-std::pow(std::fabs(c0 * u), r));
  };
  t.density = [r, c0](double x) { return stable_density(r, x / c0) / c0; };
  t.sampler = [r, c0](std::size_t count, std::uint64_t seed) {
    Rng g(seed);
    std::vector<double> out(count);
    for (auto& x : out) x = c0 * g.stable(r);
    return out;
  };
  return finish_target(std::move(t));
}

TargetDensity make_target(const std::string& kind,
                          const std::map<std::string, double>& params,
                          const SmoothnessClass& cls) {
  if (kind == "cauchy")
    return make_cauchy_target(get_param(params, "scale", "target.scale"), cls);
  if (kind == "gaussian")
    return make_gaussian_target(get_param(params, "sigma", "target.sigma"), cls);
  if (kind == "stable")
    return make_stable_target(get_param(params, "r", "target.r"),
                              get_param(params, "c0", "target.c0"), cls);
  throw ValidationError("target.kind", "unknown target kind '" + kind + "'");
}

NoiseModel make_noise(const std::string& kind,
                      const std::map<std::string, double>& params) {
  if (kind == "gaussian")
    return gaussian_noise(get_param(params, "sigma", "noise.sigma"));
  if (kind == "stable")
    return stable_noise(get_param(params, "s", "noise.s"),
                        get_param(params, "c", "noise.c"));
  if (kind == "noiseless") return noiseless_model();
  throw ValidationError("noise.kind", "unknown noise kind '" + kind + "'");
}

}  // namespace deconv
