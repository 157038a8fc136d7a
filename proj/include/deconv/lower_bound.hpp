#pragma once

#include <cstdint>

#include "deconv/bandwidth.hpp"
#include "deconv/grid.hpp"
#include "deconv/models.hpp"
#include "deconv/risk_bounds.hpp"

namespace deconv {

/// Smoothed indicator transition: 0 outside (delta, D - delta), 1 on
/// [2 delta, D - 2 delta], built from the CDF of a 5-fold uniform convolution
/// so the sandwich holds exactly and the function is three times continuously
/// differentiable.
struct PhiG {
  double delta;
  double D;
  GriddedFunction values;  // sampled on the argument axis

  double eval(double u) const;
};

PhiG build_phi_g(double delta, double D, const Grid& grid);

/// Pointwise-loss perturbation
/// sqrt(2 pi a r L) h^{(1-r)/2} e^{a/h^r} e^{-2a|u|^r} PhiG(|u|^r - 1/h^r).
double perturbation_pointwise_value(const SmoothnessClass& cls, double h,
                                    const PhiG& phig, double u);
GriddedFunction perturbation_pointwise(const SmoothnessClass& cls, double h,
                                       const PhiG& phig, const Grid& grid);

/// l2-loss perturbation with d = delta^{-1/2}:
/// sqrt(2 pi a r L (d-1)) h^{(1-r)/2} e^{(d-1)a/h^r} e^{-a d |u|^r}
/// PhiG(|u|^r - 1/h^r). Requires 0 < delta < 1.
double perturbation_l2_value(const SmoothnessClass& cls, double h,
                             const PhiG& phig, double u);
GriddedFunction perturbation_l2(const SmoothnessClass& cls, double h,
                                const PhiG& phig, const Grid& grid);

/// Two-hypothesis pair: cfs Phi0 +- PhiH(., h_plus) around a wide stable
/// center, with the perturbation sized to exhaust the class's spectral budget
/// just above the cutoff 1/h_plus.
struct TwoPointPair {
  TargetDensity f0;
  Bandwidth h_plus;
  PhiG phig;
  GriddedFunction perturbation_cf;
  GriddedFunction f1_cf, f2_cf;
  GriddedFunction f1, f2;
  Loss kind;
  double min_density;               // most negative grid value of f1, f2
  double f0_budget_integral;        // weighted energy of Phi0 (diagnostic)
  double f0_budget_bound;           // 2 pi a^2 L for the center's share
  bool f0_budget_pass;
  MembershipReport membership_f1, membership_f2;
};

/// Builds and validates the pair at h_plus(n). Rejects (throws ModelError)
/// when positivity or the pair's direct class membership fails; the center's
/// budget share is recorded as a diagnostic only, since the direct pair check
/// is sharper than the triangle-inequality split behind it.
TwoPointPair build_pair(const SmoothnessClass& cls, const NoiseModel& noise,
                        std::int64_t n, Loss kind, double delta, double D,
                        double c0);

struct SeparationReport {
  double measured;     // |f1(0) - f2(0)| or ||f1 - f2||_2
  double closed_form_floor;  // matching closed-form floor at the h_plus rate
  double ratio;        // measured / closed_form_floor
};

SeparationReport separation(const TwoPointPair& pair, const SmoothnessClass& cls,
                            const NoiseModel& noise, std::int64_t n);

struct Chi2Report {
  double chi2;
  double n_chi2;
  double t_n1;           // n ||H * f_eps||_2^2, space-domain route
  double t_n1_parseval;  // same via the frequency-domain identity
  double t_n2;           // n int x^4 (H * f_eps)^2 dx
};

Chi2Report chi2_divergence(const TwoPointPair& pair, const NoiseModel& noise,
                           std::int64_t n);

/// psi (1 - gamma0)(1 - sqrt(gamma0)) for chi^2(P1, P2) <= gamma0^2.
double two_point_risk_bound(double psi, double gamma0);

struct LowerBoundCertificate {
  Bandwidth h_plus;
  SeparationReport sep;
  Chi2Report chi2;
  double psi;              // measured separation / 2
  double gamma0;           // exact n-fold tensorization of the single chi^2
  double certified_floor;  // two-point risk bound, 0 when gamma0 >= 1
  double phi_n;            // matching sharp rate (square root scale)
  double floor_over_phi;
  double f0_budget_integral;
  double f0_budget_bound;
  bool f0_budget_pass;
};

LowerBoundCertificate lower_bound_certificate(const SmoothnessClass& cls,
                                              const NoiseModel& noise,
                                              std::int64_t n, Loss kind,
                                              double delta, double D, double c0);

}  // namespace deconv
