#pragma once

#include <cstdint>
#include <vector>

#include "deconv/models.hpp"

namespace deconv {

enum class BandwidthEquation { HSTAR, HPLUS, ADAPTIVE, ADAPTIVE_CRITICAL };

struct Bandwidth {
  double h;
  BandwidthEquation equation;
  double residual;  // exactly 0 for the closed-form equations
  std::int64_t n;
};

struct RateValue {
  double pointwise;  // phi_n^2
  double l2;         // phi_n^2 (l2 loss)
  Bandwidth h_used;
  // log-asymptotic closed forms, valid only when r <= s/2 (NaN otherwise)
  double closed_form_pointwise;
  double closed_form_l2;
};

/// Solves 2 beta / h^s + 2 alpha / h^r = log n - (log log n)^2 by bisection in
/// y = 1/h. Throws ModelError when the right-hand side is nonpositive.
Bandwidth solve_hstar(const SmoothnessClass& cls, const NoiseModel& noise,
                      std::int64_t n);

/// Same equation with + (log log n)^2 on the right; always below solve_hstar.
Bandwidth solve_hplus(const SmoothnessClass& cls, const NoiseModel& noise,
                      std::int64_t n);

/// Closed-form h = (log n / (2 beta) - sqrt(log n / (2 beta)))^{-1/s};
/// independent of the smoothness class.
Bandwidth adaptive_bandwidth(const NoiseModel& noise, std::int64_t n);

/// Closed-form h = (log n / (2 beta) - (A / beta) sqrt(log n / (2 beta)))^{-1/s}
/// for the critical regime r = s/2; requires A > alpha0 > 0.
Bandwidth adaptive_bandwidth_critical(const NoiseModel& noise, std::int64_t n,
                                      double A, double alpha0);

/// Risk inflation constant exp(alpha A / beta - alpha^2 / beta) carried by the
/// critical-regime adaptive estimator.
double critical_inflation(double alpha, double A, double beta);

/// Sharp rates evaluated at the solved h*.
RateValue rates(const SmoothnessClass& cls, const NoiseModel& noise,
                std::int64_t n);

struct AsymptoticsRow {
  std::int64_t n;
  double ratio_aa;          // h* (log n / 2 beta)^{1/s}, tends to 1
  double ratio_plus_const;  // log-bias ratio (h*/h+)^r, tends to 1 from above
  double ratio_plus_power;  // same with the h^{r-1} prefactor folded in
  double ratio_b;           // (1/n) e^{2b/h*^s} / e^{-2a/h*^r}, tends to 0
};

struct AsymptoticsReport {
  std::vector<AsymptoticsRow> rows;
  bool aa_toward_one;
  bool plus_toward_one;
  bool variance_vanishing;
};

AsymptoticsReport bandwidth_asymptotics_check(const SmoothnessClass& cls,
                                              const NoiseModel& noise,
                                              const std::vector<std::int64_t>& n_sweep);

}  // namespace deconv
