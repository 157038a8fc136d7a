#include "deconv/risk_bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace deconv {

namespace {
constexpr double kPi = std::numbers::pi;

void check_h(double h) {
  if (!(h > 0)) throw ValidationError("h", "bandwidth must be positive");
}
}  // namespace

double bias_bound_pointwise(const SmoothnessClass& cls, double h) {
  check_h(h);
  return cls.L / (2.0 * kPi * cls.alpha * cls.r) * std::pow(h, cls.r - 1.0) *
         std::exp(-2.0 * cls.alpha * std::pow(h, -cls.r));
}

double bias_bound_l2(const SmoothnessClass& cls, double h) {
  check_h(h);
  return cls.L * std::exp(-2.0 * cls.alpha * std::pow(h, -cls.r));
}

double variance_bound_pointwise(const NoiseModel& noise, double f_star, double h,
                                std::int64_t n) {
  check_h(h);
  if (!(f_star > 0)) throw ValidationError("f_star", "f_star must be positive");
  double factor = std::min(f_star, 4.0 / (noise.beta * noise.s) *
                                       std::pow(h, noise.s - 1.0));
  return factor * variance_bound_l2(noise, h, n);
}

double variance_bound_l2(const NoiseModel& noise, double h, std::int64_t n) {
  check_h(h);
  if (n < 1) throw ValidationError("n", "need n >= 1");
  if (!(noise.beta > 0)) throw ValidationError("noise.beta", "beta must be positive");
  double num = std::pow(h, noise.s + 2.0 * noise.gamma - 1.0);
  double den = 2.0 * kPi * noise.beta * noise.s * noise.b_min * noise.b_min *
               static_cast<double>(n);
  return num / den * std::exp(2.0 * noise.beta * std::pow(h, -noise.s));
}

RiskReport assemble_report(const SmoothnessClass& cls, const NoiseModel& noise,
                           std::int64_t n, double h, Loss loss) {
  RiskReport rep;
  rep.loss = loss;
  rep.h = h;
  rep.n = n;
  RateValue rv = rates(cls, noise, n);
  if (loss == Loss::Pointwise) {
    rep.bias_sq_bound = bias_bound_pointwise(cls, h);
    rep.variance_bound =
        variance_bound_pointwise(noise, sup_density_bound(cls), h, n);
    rep.rate_phi = rv.pointwise;
  } else {
    rep.bias_sq_bound = bias_bound_l2(cls, h);
    rep.variance_bound = variance_bound_l2(noise, h, n);
    rep.rate_phi = rv.l2;
  }
  rep.total_bound = rep.bias_sq_bound + rep.variance_bound;
  rep.bias_dominates = rep.variance_bound < 0.1 * rep.bias_sq_bound;
  return rep;
}

}  // namespace deconv
