#include "deconv/lower_bound.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace deconv {

namespace {

constexpr double kPi = std::numbers::pi;

/// CDF of the sum of five iid uniforms on [0, 1] (piecewise quintic).
double irwin_hall5_cdf(double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 5.0) return 1.0;
  static const double binom[6] = {1, 5, 10, 10, 5, 1};
  double s = 0.0;
  double sign = 1.0;
  for (int k = 0; k <= static_cast<int>(x); ++k) {
    double t = x - k;
    s += sign * binom[k] * t * t * t * t * t;
    sign = -sign;
  }
  return std::clamp(s / 120.0, 0.0, 1.0);
}

/// CDF of the rescaled bump J supported on (-1, 1): exactly 0 below -1 and
/// exactly 1 above 1.
double bump_cdf(double t) { return irwin_hall5_cdf(2.5 * (t + 1.0)); }

double phi_g_closed_form(double u, double delta, double D) {
  double rise = bump_cdf(2.0 * (u - 1.5 * delta) / delta);
  double fall = bump_cdf(2.0 * (u - D + 1.5 * delta) / delta);
  return std::clamp(rise - fall, 0.0, 1.0);
}

void check_dom_fits(const SmoothnessClass& cls, double h, const PhiG& phig,
                    const Grid& grid) {
  double top = std::pow(phig.D - phig.delta + std::pow(h, -cls.r), 1.0 / cls.r);
  if (top >= grid.freq_max())
    throw ValidationError("grid",
                          "perturbation support exceeds the frequency grid; "
                          "use a larger grid");
}

double hplus_rate(const SmoothnessClass& cls, double h_plus, Loss kind) {
  double expo = std::exp(-2.0 * cls.alpha * std::pow(h_plus, -cls.r));
  if (kind == Loss::Pointwise)
    return std::sqrt(cls.L / (2.0 * kPi * cls.alpha * cls.r) *
                     std::pow(h_plus, cls.r - 1.0) * expo);
  return std::sqrt(cls.L * expo);
}

double bracket_factor(const SmoothnessClass& cls, const PhiG& phig, Loss kind) {
  double a = cls.alpha, delta = phig.delta, D = phig.D;
  if (kind == Loss::Pointwise)
    return std::exp(-4.0 * a * delta) - std::exp(-2.0 * a * (D - 2.0 * delta));
  double rd = std::sqrt(delta);
  return std::sqrt((1.0 - rd) * (std::exp(-4.0 * a * rd) -
                                 std::exp(-2.0 * a * (D - 2.0 * delta) / rd)));
}

}  // namespace

double PhiG::eval(double u) const { return phi_g_closed_form(u, delta, D); }

PhiG build_phi_g(double delta, double D, const Grid& grid) {
  if (!(delta > 0)) throw ValidationError("delta", "delta must be positive");
  if (!(D > 4.0 * delta)) throw ValidationError("D", "require D > 4 delta");
  GriddedFunction vals(grid, Domain::Space);
  for (std::size_t j = 0; j < grid.n_points; ++j)
    vals.values[j] = phi_g_closed_form(grid.x(j), delta, D);
  return PhiG{delta, D, std::move(vals)};
}

double perturbation_pointwise_value(const SmoothnessClass& cls, double h,
                                    const PhiG& phig, double u) {
  double au = std::fabs(u);
  double g = phig.eval(std::pow(au, cls.r) - std::pow(h, -cls.r));
  if (g == 0.0) return 0.0;
  return std::sqrt(2.0 * kPi * cls.alpha * cls.r * cls.L) *
         std::pow(h, 0.5 * (1.0 - cls.r)) *
         std::exp(cls.alpha * std::pow(h, -cls.r)) *
         std::exp(-2.0 * cls.alpha * std::pow(au, cls.r)) * g;
}

GriddedFunction perturbation_pointwise(const SmoothnessClass& cls, double h,
                                       const PhiG& phig, const Grid& grid) {
  if (!(h > 0)) throw ValidationError("h", "bandwidth must be positive");
  check_dom_fits(cls, h, phig, grid);
  GriddedFunction out(grid, Domain::Frequency);
  for (std::size_t k = 0; k < grid.n_points; ++k)
    out.values[k] = perturbation_pointwise_value(cls, h, phig, grid.u(k));
  return out;
}

double perturbation_l2_value(const SmoothnessClass& cls, double h,
                             const PhiG& phig, double u) {
  if (!(phig.delta < 1.0))
    throw ValidationError("delta", "l2 perturbation requires delta < 1");
  double d = 1.0 / std::sqrt(phig.delta);
  double au = std::fabs(u);
  double g = phig.eval(std::pow(au, cls.r) - std::pow(h, -cls.r));
  if (g == 0.0) return 0.0;
  return std::sqrt(2.0 * kPi * cls.alpha * cls.r * cls.L * (d - 1.0)) *
         std::pow(h, 0.5 * (1.0 - cls.r)) *
         std::exp((d - 1.0) * cls.alpha * std::pow(h, -cls.r)) *
         std::exp(-cls.alpha * d * std::pow(au, cls.r)) * g;
}

GriddedFunction perturbation_l2(const SmoothnessClass& cls, double h,
                                const PhiG& phig, const Grid& grid) {
  if (!(h > 0)) throw ValidationError("h", "bandwidth must be positive");
  if (!(phig.delta < 1.0))
    throw ValidationError("delta", "l2 perturbation requires delta < 1");
  check_dom_fits(cls, h, phig, grid);
  GriddedFunction out(grid, Domain::Frequency);
  for (std::size_t k = 0; k < grid.n_points; ++k)
    out.values[k] = perturbation_l2_value(cls, h, phig, grid.u(k));
  return out;
}

TwoPointPair build_pair(const SmoothnessClass& cls, const NoiseModel& noise,
                        std::int64_t n, Loss kind, double delta, double D,
                        double c0) {
  if (!(cls.r < 2.0))
    throw ValidationError("class.r", "two-point construction requires r < 2");
  double c0_min = std::max(std::pow(cls.alpha, 1.0 / cls.r), cls.alpha);
  if (!(c0 > c0_min))
    throw ValidationError("c0", "require c0 > max(alpha^{1/r}, alpha)");
  if (kind == Loss::L2 && !(delta < 1.0))
    throw ValidationError("delta", "l2 construction requires delta < 1");

  Grid grid = Grid::standard();
  PhiG phig = build_phi_g(delta, D, Grid(1024, std::max(4.0, 2.0 * D)));
  Bandwidth hp = solve_hplus(cls, noise, n);

  double r0 = (cls.r > 1.0) ? cls.r : 1.0;
  TargetDensity f0 = make_stable_target(r0, c0, cls);

  GriddedFunction pert = (kind == Loss::Pointwise)
                             ? perturbation_pointwise(cls, hp.h, phig, grid)
                             : perturbation_l2(cls, hp.h, phig, grid);

  GriddedFunction f1_cf(grid, Domain::Frequency), f2_cf(grid, Domain::Frequency);
  for (std::size_t k = 0; k < grid.n_points; ++k) {
    std::complex<double> base = f0.cf(grid.u(k));
    f1_cf.values[k] = base + pert.values[k];
    f2_cf.values[k] = base - pert.values[k];
  }
  GriddedFunction f1 = inverse_transform(f1_cf);
  GriddedFunction f2 = inverse_transform(f2_cf);

  double min_density = 0.0;
  double min_at = 0.0;
  for (std::size_t j = 0; j < grid.n_points; ++j) {
    double lo = std::min(f1.values[j].real(), f2.values[j].real());
    if (lo < min_density) {
      min_density = lo;
      min_at = grid.x(j);
    }
  }
  if (min_density < -1e-8) {
    std::ostringstream os;
    os << "pair rejected: density reaches " << min_density << " at x = " << min_at
       << " (n too small or c0 too small)";
    throw ModelError(os.str());
  }
  double m1 = grid_integral(f1), m2 = grid_integral(f2);
  if (std::fabs(m1 - 1.0) > 1e-5 || std::fabs(m2 - 1.0) > 1e-5)
    throw ModelError("pair rejected: densities do not integrate to 1");

  auto pert_value = [&](double u) {
    return (kind == Loss::Pointwise) ? perturbation_pointwise_value(cls, hp.h, phig, u)
                                     : perturbation_l2_value(cls, hp.h, phig, u);
  };
  CfFunction cf1 = [&, pert_value](double u) { return f0.cf(u) + pert_value(u); };
  CfFunction cf2 = [&, pert_value](double u) { return f0.cf(u) - pert_value(u); };
  MembershipReport mem1 = class_membership(cf1, cls);
  MembershipReport mem2 = class_membership(cf2, cls);
  if (!mem1.pass || !mem2.pass) {
    const MembershipReport& bad = mem1.pass ? mem2 : mem1;
    std::ostringstream os;
    os << "pair rejected: class membership integral " << bad.integral
       << " exceeds bound " << bad.bound;
    throw ModelError(os.str());
  }

  // Diagnostic: the center's share of the budget under the triangle-inequality
  // split. The direct pair check above is the acceptance gate; this split is
  // much more conservative and typically fails at practical c0.
  double d = (kind == Loss::L2) ? 1.0 / std::sqrt(delta) : 2.0;
  double a_exp = (kind == Loss::Pointwise) ? cls.alpha * delta
                                           : cls.alpha * (d - 1.0) * delta;
  double a = 1.0 - std::exp(-0.5 * a_exp);
  SmoothnessClass shrunk{cls.alpha, cls.r, a * a * cls.L};
  MembershipReport f0_mem = class_membership(f0.cf, shrunk);

  TwoPointPair pair{std::move(f0),     hp,
                    std::move(phig),   std::move(pert),
                    std::move(f1_cf),  std::move(f2_cf),
                    std::move(f1),     std::move(f2),
                    kind,              min_density,
                    f0_mem.integral,   f0_mem.bound,
                    f0_mem.pass,       std::move(mem1),
                    std::move(mem2)};
  return pair;
}

SeparationReport separation(const TwoPointPair& pair, const SmoothnessClass& cls,
                            const NoiseModel& noise, std::int64_t) {
  const Grid& grid = pair.f1.grid;
  double measured;
  if (pair.kind == Loss::Pointwise) {
    std::size_t j0 = grid.n_points / 2;  // x(j0) = 0 exactly
    measured = std::fabs(pair.f1.values[j0].real() - pair.f2.values[j0].real());
  } else {
    GriddedFunction diff(grid, Domain::Space);
    for (std::size_t j = 0; j < grid.n_points; ++j)
      diff.values[j] = pair.f1.values[j] - pair.f2.values[j];
    measured = std::sqrt(grid_l2_norm_sq(diff));
  }
  double floor = 2.0 * hplus_rate(cls, pair.h_plus.h, pair.kind) *
                 bracket_factor(cls, pair.phig, pair.kind);
  (void)noise;
  return SeparationReport{measured, floor, measured / floor};
}

Chi2Report chi2_divergence(const TwoPointPair& pair, const NoiseModel& noise,
                           std::int64_t n) {
  const Grid& grid = pair.f1.grid;
  GriddedFunction f1y_cf(grid, Domain::Frequency);
  GriddedFunction hc_cf(grid, Domain::Frequency);  // Phi^H Phi^eps
  for (std::size_t k = 0; k < grid.n_points; ++k) {
    std::complex<double> ne = noise.cf(grid.u(k));
    f1y_cf.values[k] = pair.f1_cf.values[k] * ne;
    hc_cf.values[k] = pair.perturbation_cf.values[k] * ne;
  }
  GriddedFunction f1y = inverse_transform(f1y_cf);
  GriddedFunction hc = inverse_transform(hc_cf);  // H * f_eps

  const double dx = grid.spacing();
  const double nd = static_cast<double>(n);
  double chi2 = 0.0, t1 = 0.0, t2 = 0.0;
  for (std::size_t j = 0; j < grid.n_points; ++j) {
    double denom = f1y.values[j].real();
    double hval = hc.values[j].real();
    if (denom <= 0.0)
      throw ModelError("chi2: observation density nonpositive at x = " +
                       std::to_string(grid.x(j)));
    double x = grid.x(j);
    chi2 += 4.0 * hval * hval / denom;
    t1 += hval * hval;
    t2 += x * x * x * x * hval * hval;
  }
  chi2 *= dx;
  double t_n1 = nd * t1 * dx;
  double t_n2 = nd * t2 * dx;
  double t_n1_parseval = nd * grid_l2_norm_sq(hc_cf) / (2.0 * kPi);
  return Chi2Report{chi2, nd * chi2, t_n1, t_n1_parseval, t_n2};
}

double two_point_risk_bound(double psi, double gamma0) {
  if (!(psi > 0)) throw ValidationError("psi", "psi must be positive");
  if (!(gamma0 > 0.0) || !(gamma0 < 1.0))
    throw ValidationError("gamma0", "gamma0 must lie in (0, 1)");
  return psi * (1.0 - gamma0) * (1.0 - std::sqrt(gamma0));
}

LowerBoundCertificate lower_bound_certificate(const SmoothnessClass& cls,
                                              const NoiseModel& noise,
                                              std::int64_t n, Loss kind,
                                              double delta, double D, double c0) {
  TwoPointPair pair = build_pair(cls, noise, n, kind, delta, D, c0);
  SeparationReport sep = separation(pair, cls, noise, n);
  Chi2Report chi2 = chi2_divergence(pair, noise, n);

  double psi = 0.5 * sep.measured;
  // exact tensorization: chi^2 of the n-fold products is (1 + chi^2)^n - 1
  double gamma0 = std::sqrt(std::expm1(static_cast<double>(n) *
                                       std::log1p(chi2.chi2)));
  double floor;
  if (gamma0 >= 1.0)
    floor = 0.0;
  else if (gamma0 <= 0.0)
    floor = psi;
  else
    floor = two_point_risk_bound(psi, gamma0);

  RateValue rv = rates(cls, noise, n);
  double phi = std::sqrt(kind == Loss::Pointwise ? rv.pointwise : rv.l2);
  return LowerBoundCertificate{pair.h_plus,
                               sep,
                               chi2,
                               psi,
                               gamma0,
                               floor,
                               phi,
                               floor / phi,
                               pair.f0_budget_integral,
                               pair.f0_budget_bound,
                               pair.f0_budget_pass};
}

}  // namespace deconv
