#include "deconv/bandwidth.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace deconv {

namespace {

constexpr double kPi = std::numbers::pi;

double log_log_sq(std::int64_t n) {
  double ll = std::log(std::log(static_cast<double>(n)));
  return ll * ll;
}

void check_regime(const SmoothnessClass& cls, const NoiseModel& noise) {
  if (!(cls.r < noise.s))
    throw ValidationError("class.r", "estimation requires r < s");
  if (!(noise.beta > 0)) throw ValidationError("noise.beta", "beta must be positive");
}

Bandwidth solve_two_exponent(const SmoothnessClass& cls, const NoiseModel& noise,
                             std::int64_t n, double rhs, BandwidthEquation eq) {
  const double alpha = cls.alpha, r = cls.r, beta = noise.beta, s = noise.s;
  if (!(rhs > 0)) throw ModelError("bandwidth equation: n too small (rhs <= 0)");

  auto lhs = [&](double y) {
    return 2.0 * beta * std::pow(y, s) + 2.0 * alpha * std::pow(y, r);
  };
  double ylo = 1e-8;
  double yhi = 4.0 * std::max(std::log(static_cast<double>(n)), 10.0) *
               std::pow(0.5 / beta, 1.0 / s);
  while (lhs(yhi) < rhs) yhi *= 2.0;
  if (lhs(ylo) > rhs) throw ModelError("bandwidth equation: bracket failure");

  for (int i = 0; i < 200; ++i) {
    double mid = 0.5 * (ylo + yhi);
    if (mid == ylo || mid == yhi) break;
    (lhs(mid) < rhs ? ylo : yhi) = mid;
  }
  double y = 0.5 * (ylo + yhi);
  return Bandwidth{1.0 / y, eq, lhs(y) - rhs, n};
}

}  // namespace

Bandwidth solve_hstar(const SmoothnessClass& cls, const NoiseModel& noise,
                      std::int64_t n) {
  check_regime(cls, noise);
  if (n < 3) throw ModelError("solve_hstar: n must be >= 3");
  double rhs = std::log(static_cast<double>(n)) - log_log_sq(n);
  return solve_two_exponent(cls, noise, n, rhs, BandwidthEquation::HSTAR);
}

Bandwidth solve_hplus(const SmoothnessClass& cls, const NoiseModel& noise,
                      std::int64_t n) {
  check_regime(cls, noise);
  if (n < 3) throw ModelError("solve_hplus: n must be >= 3");
  double rhs = std::log(static_cast<double>(n)) + log_log_sq(n);
  return solve_two_exponent(cls, noise, n, rhs, BandwidthEquation::HPLUS);
}

Bandwidth adaptive_bandwidth(const NoiseModel& noise, std::int64_t n) {
  if (!(noise.beta > 0)) throw ValidationError("noise.beta", "beta must be positive");
  double t = std::log(static_cast<double>(n)) / (2.0 * noise.beta);
  if (!(t > 1.0)) throw ModelError("adaptive_bandwidth: n too small for adaptation");
  double h = std::pow(t - std::sqrt(t), -1.0 / noise.s);
  return Bandwidth{h, BandwidthEquation::ADAPTIVE, 0.0, n};
}

Bandwidth adaptive_bandwidth_critical(const NoiseModel& noise, std::int64_t n,
                                      double A, double alpha0) {
  if (!(alpha0 > 0)) throw ValidationError("alpha0", "alpha0 must be positive");
  if (!(A > alpha0)) throw ValidationError("A", "critical adaptation requires A > alpha0");
  if (!(noise.beta > 0)) throw ValidationError("noise.beta", "beta must be positive");
  double t = std::log(static_cast<double>(n)) / (2.0 * noise.beta);
  double shift = (A / noise.beta) * std::sqrt(t);
  if (!(t > shift))
    throw ModelError(
        "adaptive_bandwidth_critical: need log n/(2 beta) > (A/beta) sqrt(log n/(2 beta))");
  double h = std::pow(t - shift, -1.0 / noise.s);
  return Bandwidth{h, BandwidthEquation::ADAPTIVE_CRITICAL, 0.0, n};
}

double critical_inflation(double alpha, double A, double beta) {
  return std::exp(alpha * A / beta - alpha * alpha / beta);
}

RateValue rates(const SmoothnessClass& cls, const NoiseModel& noise,
                std::int64_t n) {
  Bandwidth bw = solve_hstar(cls, noise, n);
  const double alpha = cls.alpha, r = cls.r, L = cls.L;
  double expo = std::exp(-2.0 * alpha * std::pow(bw.h, -r));
  RateValue out;
  out.pointwise = L / (2.0 * kPi * alpha * r) * std::pow(bw.h, r - 1.0) * expo;
  out.l2 = L * expo;
  out.h_used = bw;

  double nan = std::numeric_limits<double>::quiet_NaN();
  out.closed_form_pointwise = nan;
  out.closed_form_l2 = nan;
  double t = std::log(static_cast<double>(n)) / (2.0 * noise.beta);
  if (r < 0.5 * noise.s) {
    double e = std::exp(-2.0 * alpha * std::pow(t, r / noise.s));
    out.closed_form_l2 = L * e;
    out.closed_form_pointwise =
        L / (2.0 * kPi * alpha * r) * std::pow(t, (1.0 - r) / noise.s) * e;
  } else if (std::fabs(r - 0.5 * noise.s) < 1e-12) {
    double e = std::exp(-2.0 * alpha * std::sqrt(t) + alpha * alpha / noise.beta);
    out.closed_form_l2 = L * e;
    out.closed_form_pointwise =
        L / (2.0 * kPi * alpha * r) * std::pow(t, (1.0 - r) / noise.s) * e;
  }
  return out;
}

AsymptoticsReport bandwidth_asymptotics_check(
    const SmoothnessClass& cls, const NoiseModel& noise,
    const std::vector<std::int64_t>& n_sweep) {
  AsymptoticsReport rep;
  rep.aa_toward_one = true;
  rep.plus_toward_one = true;
  rep.variance_vanishing = true;
  const double alpha = cls.alpha, r = cls.r, beta = noise.beta, s = noise.s;

  double prev_aa_gap = std::numeric_limits<double>::infinity();
  double prev_plus = 0.0;
  double prev_b = std::numeric_limits<double>::infinity();
  bool first = true;
  for (std::int64_t n : n_sweep) {
    double hs = solve_hstar(cls, noise, n).h;
    double hp = solve_hplus(cls, noise, n).h;
    double t = std::log(static_cast<double>(n)) / (2.0 * beta);

    AsymptoticsRow row;
    row.n = n;
    row.ratio_aa = hs * std::pow(t, 1.0 / s);
    double bias_star = std::exp(-2.0 * alpha * std::pow(hs, -r));
    double log_bias_star = -2.0 * alpha * std::pow(hs, -r);
    double log_bias_plus = -2.0 * alpha * std::pow(hp, -r);
    // the two bandwidths give log-equivalent rates; the value ratio vanishes
    row.ratio_plus_const = log_bias_plus / log_bias_star;
    row.ratio_plus_power =
        (log_bias_plus + (r - 1.0) * std::log(hp)) /
        (log_bias_star + (r - 1.0) * std::log(hs));
    row.ratio_b = std::exp(2.0 * beta * std::pow(hs, -s)) /
                  (static_cast<double>(n) * bias_star);
    rep.rows.push_back(row);

    if (!first) {
      if (std::fabs(row.ratio_aa - 1.0) > prev_aa_gap) rep.aa_toward_one = false;
      if (std::fabs(row.ratio_plus_const - 1.0) > std::fabs(prev_plus - 1.0))
        rep.plus_toward_one = false;
      if (row.ratio_b > prev_b) rep.variance_vanishing = false;
    }
    prev_aa_gap = std::fabs(row.ratio_aa - 1.0);
    prev_plus = row.ratio_plus_const;
    prev_b = row.ratio_b;
    first = false;
  }
  return rep;
}

}  // namespace deconv
