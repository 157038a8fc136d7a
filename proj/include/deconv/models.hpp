#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "deconv/grid.hpp"

namespace deconv {

/// Bad or inconsistent model parameters; `field` names the offending entry in
/// config-path notation (e.g. "class.alpha") for CLI error reporting.
struct ValidationError : std::runtime_error {
  std::string field;
  ValidationError(std::string f, const std::string& what)
      : std::runtime_error(what), field(std::move(f)) {}
};

/// Numerical model failure (divergence, membership rejection, ...).
struct ModelError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

using CfFunction = std::function<std::complex<double>(double)>;
using Sampler = std::function<std::vector<double>(std::size_t, std::uint64_t)>;

/// Additive noise with characteristic function cf and the envelope constants
/// b_min |u|^gamma e^{-beta|u|^s} <= |cf(u)| <= b_max |u|^{gamma_prime}
/// e^{-beta|u|^s} for |u| >= u0. Optional nd_B / nd_gamma1 bound the first two
/// derivatives of cf by nd_B |u|^{nd_gamma1} e^{-beta|u|^s}.
struct NoiseModel {
  std::string kind;  // "gaussian", "stable", "noiseless"
  std::map<std::string, double> params;

  CfFunction cf;
  Sampler sampler;
  double beta = 0.0;
  double s = 1.0;
  double gamma = 0.0;
  double gamma_prime = 0.0;
  double b_min = 1.0;
  double b_max = 1.0;
  double u0 = 1.0;
  bool has_nd = false;
  double nd_B = 0.0;
  double nd_gamma1 = 0.0;
};

/// The triple (alpha, r, L) of the spectral smoothness class.
struct SmoothnessClass {
  double alpha;
  double r;
  double L;
};

struct TargetDensity {
  std::string kind;  // "cauchy", "gaussian", "stable"
  std::map<std::string, double> params;

  CfFunction cf;
  std::function<double(double)> density;  // pointwise, closed form or quadrature
  Sampler sampler;
  SmoothnessClass declared_class;
  // periodized density by cf inversion on the standard grid
  GriddedFunction density_grid{Grid::standard(), Domain::Space};
};

NoiseModel gaussian_noise(double sigma);
NoiseModel stable_noise(double s, double c);

/// Degenerate cf = 1 model for estimator sanity tests (spectral-cutoff-only
/// regularization; the envelope constants are not meaningful).
NoiseModel noiseless_model();

struct EnvelopeReport {
  bool pass;
  double worst_ratio;  // max over test points of envelope violation ratio
  std::string detail;
};

/// Checks the Assumption-type sandwich at n_test log-spaced points of
/// [u_lo, u_hi], plus the derivative bounds when nd fields are present.
/// Throws ModelError if cf vanishes at a test point.
EnvelopeReport cf_envelope_check(const NoiseModel& m, double u_lo, double u_hi,
                                 int n_test);

struct MembershipReport {
  double integral;  // measured weighted spectral energy
  double bound;     // 2 pi L
  bool pass;
  bool divergent;
  std::string detail;
};

/// Evaluates int |cf(u)|^2 exp(2 alpha |u|^r) du over doubling truncations,
/// flagging divergence when the increments grow. pass iff the integral
/// converges and is <= 2 pi L (1 + tol).
MembershipReport class_membership(const CfFunction& cf, const SmoothnessClass& cls,
                                  double tol = 1e-6);

/// Uniform density bound L + C(r, alpha)/pi over the class, with
/// C(r, alpha) = int_0^inf exp(-2 alpha u^r) du.
double sup_density_bound(const SmoothnessClass& cls);

/// Density at x of the symmetric stable law with cf exp(-|t|^r), by direct
/// quadrature of the inversion integral.
double stable_density(double r, double x);

TargetDensity make_cauchy_target(double scale, const SmoothnessClass& cls);
TargetDensity make_gaussian_target(double sigma, const SmoothnessClass& cls);
TargetDensity make_stable_target(double r, double c0, const SmoothnessClass& cls);

/// Dispatch on kind: "cauchy" {scale}, "gaussian" {sigma}, "stable" {r, c0}.
TargetDensity make_target(const std::string& kind,
                          const std::map<std::string, double>& params,
                          const SmoothnessClass& cls);

NoiseModel make_noise(const std::string& kind,
                      const std::map<std::string, double>& params);

}  // namespace deconv
