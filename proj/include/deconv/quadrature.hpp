#pragma once

#include <functional>
#include <stdexcept>
#include <string>

namespace deconv {

/// Thrown when the adaptive integrator exhausts its panel budget. The best
/// estimate accumulated so far is attached.
struct QuadratureError : std::runtime_error {
  double best_estimate;
  QuadratureError(const std::string& what, double best)
      : std::runtime_error(what), best_estimate(best) {}
};

/// Adaptive-panel estimate of the integral of f over [a, b] with estimated
/// absolute error below tol.
double quadrature(const std::function<double(double)>& f, double a, double b,
                  double tol = 1e-10);

/// Integral of f over [a, +inf) for integrands that decay to zero. Advances in
/// geometrically growing panels and stops once consecutive panels become
/// negligible against tol.
double quadrature_to_inf(const std::function<double(double)>& f, double a,
                         double tol = 1e-10);

/// Leading integration-by-parts term of the tail integral
/// int_v^inf u^A exp(-alpha u^r) du, exact for A=0, r=1.
double tail_integral_asymptotic(double A, double alpha, double r, double v);

/// Leading term of the growing head integral int_0^v u^B exp(beta u^s) du.
double head_integral_asymptotic(double B, double beta, double s, double v);

}  // namespace deconv
