#include <cmath>
#include <complex>
#include <numbers>

#include "deconv/estimator.hpp"
#include "deconv/risk_bounds.hpp"
#include "doctest.h"

using namespace deconv;
using std::numbers::pi;

TEST_CASE("bias bound closed forms") {
  SmoothnessClass cls{1.0, 1.0, 1.0 / pi};
  // l2: L e^{-2 alpha / h^r}
  CHECK(bias_bound_l2(cls, 0.5) ==
        doctest::Approx(std::exp(-4.0) / pi).epsilon(1e-14));
  // pointwise: (L / 2 pi alpha r) h^{r-1} e^{-2 alpha / h^r}
  CHECK(bias_bound_pointwise(cls, 0.5) ==
        doctest::Approx(std::exp(-4.0) / (2.0 * pi * pi)).epsilon(1e-14));

  SmoothnessClass c2{0.5, 2.0, 2.0};
  CHECK(bias_bound_l2(c2, 0.5) == doctest::Approx(2.0 * std::exp(-4.0)).epsilon(1e-14));
  CHECK(bias_bound_pointwise(c2, 0.5) ==
        doctest::Approx(2.0 / (2.0 * pi) * 0.5 * std::exp(-4.0)).epsilon(1e-14));

  CHECK_THROWS_AS(bias_bound_l2(cls, 0.0), ValidationError);
}

TEST_CASE("l2 bias bound dominates the exact cauchy bias") {
  SmoothnessClass cls{0.5, 1.0, 1.0 / pi};
  auto cf = [](double u) {
    return std::complex<double>(std::exp(-std::fabs(u)), 0.0);
  };
  for (double h : {0.3, 0.5, 0.8}) {
    CHECK(exact_bias_l2(cf, h) <= bias_bound_l2(cls, h) * (1.0 + 1e-9));
  }
}

TEST_CASE("variance bound closed forms") {
  NoiseModel noise = gaussian_noise(1.0);  // beta 1/2, s 2, gamma 0, b_min 1
  // h^{s-1} / (2 pi beta s n) e^{2 beta / h^s}
  double h = 0.5;
  std::int64_t n = 1000000;
  double expected = 0.5 / (2.0 * pi * 0.5 * 2.0 * 1e6) * std::exp(4.0);
  CHECK(variance_bound_l2(noise, h, n) == doctest::Approx(expected).epsilon(1e-14));
  // doubling n halves the bound exactly
  CHECK(variance_bound_l2(noise, h, 2 * n) ==
        doctest::Approx(0.5 * expected).epsilon(1e-14));

  // pointwise variant multiplies by min(f_star, (4 / beta s) h^{s-1})
  double spatial = 4.0 / (0.5 * 2.0) * h;  // = 2
  CHECK(variance_bound_pointwise(noise, 10.0, h, n) ==
        doctest::Approx(spatial * expected).epsilon(1e-12));
  CHECK(variance_bound_pointwise(noise, 0.7, h, n) ==
        doctest::Approx(0.7 * expected).epsilon(1e-12));

  // tighter bandwidth inflates the bound through the exponential
  CHECK(variance_bound_l2(noise, 0.25, n) > variance_bound_l2(noise, 0.5, n));
}

TEST_CASE("assembled report at hstar shows dominating bias") {
  SmoothnessClass cls{1.0, 1.0, 1.0 / pi};
  NoiseModel noise = gaussian_noise(1.0);
  std::int64_t n = 1000000;
  double h = 0.5511528593981729;

  RiskReport rep = assemble_report(cls, noise, n, h, Loss::L2);
  CHECK(rep.total_bound ==
        doctest::Approx(rep.bias_sq_bound + rep.variance_bound).epsilon(1e-15));
  CHECK(rep.bias_dominates);
  CHECK(rep.variance_bound / rep.bias_sq_bound == doctest::Approx(2.79e-4).epsilon(0.05));
  CHECK(rep.rate_phi == doctest::Approx(0.008450858417746005).epsilon(1e-9));
  // the assembled bound is achieved up to the vanishing variance share
  CHECK(rep.total_bound / rep.rate_phi < 1.001);
  CHECK(rep.total_bound >= rep.rate_phi);

  RiskReport pw = assemble_report(cls, noise, n, h, Loss::Pointwise);
  CHECK(pw.rate_phi == doctest::Approx(0.0013449958905540301).epsilon(1e-9));
  CHECK(pw.bias_dominates);
}

TEST_CASE("variance share of the bound vanishes along n") {
  SmoothnessClass cls{1.0, 1.0, 1.0 / pi};
  NoiseModel noise = gaussian_noise(1.0);
  double last = 1e300;
  for (std::int64_t n : {10000LL, 1000000LL, 100000000LL, 10000000000LL}) {
    double h = solve_hstar(cls, noise, n).h;
    RiskReport rep = assemble_report(cls, noise, n, h, Loss::L2);
    double share = rep.variance_bound / rep.bias_sq_bound;
    CHECK(share < last);
    if (n >= 1000000) CHECK(share < 0.1);
    last = share;
  }
}
