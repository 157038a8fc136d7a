#pragma once

#include <cstdint>

#include "deconv/bandwidth.hpp"
#include "deconv/models.hpp"

namespace deconv {

enum class Loss { Pointwise, L2 };

struct RiskReport {
  double bias_sq_bound;
  double variance_bound;
  double total_bound;  // bias_sq_bound + variance_bound
  double rate_phi;     // the sharp rate for this loss at h*
  Loss loss;
  double h;
  std::int64_t n;
  bool bias_dominates;  // variance_bound / bias_sq_bound < 0.1
};

/// (L / (2 pi alpha r)) h^{r-1} exp(-2 alpha / h^r), asymptotic constant.
double bias_bound_pointwise(const SmoothnessClass& cls, double h);

/// L exp(-2 alpha / h^r); exact non-asymptotic majorant of the l2 bias.
double bias_bound_l2(const SmoothnessClass& cls, double h);

/// min(f_star, (4 / (beta s)) h^{s-1}) * (h^{s+2gamma-1} /
/// (2 pi beta s b_min^2 n)) exp(2 beta / h^s).
double variance_bound_pointwise(const NoiseModel& noise, double f_star, double h,
                                std::int64_t n);

/// (h^{s+2gamma-1} / (2 pi beta s b_min^2 n)) exp(2 beta / h^s).
double variance_bound_l2(const NoiseModel& noise, double h, std::int64_t n);

/// Sums the matching bias and variance bounds and attaches the sharp rate.
/// f_star is taken from sup_density_bound.
RiskReport assemble_report(const SmoothnessClass& cls, const NoiseModel& noise,
                           std::int64_t n, double h, Loss loss);

}  // namespace deconv
