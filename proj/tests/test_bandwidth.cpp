#include <cmath>
#include <numbers>

#include "deconv/bandwidth.hpp"
#include "doctest.h"

using namespace deconv;
using std::numbers::pi;

namespace {
const SmoothnessClass kCls{1.0, 1.0, 1.0 / pi};
const SmoothnessClass kClsHalf{0.5, 1.0, 1.0 / pi};
}  // namespace

TEST_CASE("hstar solves the two-exponent equation") {
  NoiseModel noise = gaussian_noise(1.0);
  Bandwidth b = solve_hstar(kCls, noise, 1000000);
  CHECK(b.h == doctest::Approx(0.5511528593981729).epsilon(1e-12));
  CHECK(std::fabs(b.residual) < 1e-10);
  // plug back in: 2 beta / h^2 + 2 alpha / h = log n - (log log n)^2
  double lhs = 1.0 / (b.h * b.h) + 2.0 / b.h;
  double rhs = std::log(1e6) - std::pow(std::log(std::log(1e6)), 2);
  CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
  CHECK(rhs == doctest::Approx(6.920727379836679).epsilon(1e-14));

  Bandwidth half = solve_hstar(kClsHalf, noise, 1000000);
  CHECK(half.h == doctest::Approx(0.45917447869743083).epsilon(1e-12));

  CHECK_THROWS_AS(solve_hstar(kCls, noise, 2), ModelError);
  // r >= s is outside the estimation regime
  SmoothnessClass too_smooth{1.0, 2.0, 1.0};
  CHECK_THROWS_AS(solve_hstar(too_smooth, noise, 1000000), ValidationError);
}

TEST_CASE("hplus sits below hstar") {
  NoiseModel noise = gaussian_noise(1.0);
  Bandwidth plus = solve_hplus(kCls, noise, 1000000);
  CHECK(plus.h == doctest::Approx(0.27326655506251823).epsilon(1e-12));
  CHECK(plus.h < solve_hstar(kCls, noise, 1000000).h);

  Bandwidth plus_half = solve_hplus(kClsHalf, noise, 1000000);
  CHECK(plus_half.h == doctest::Approx(0.24520373304717874).epsilon(1e-12));
}

TEST_CASE("adaptive bandwidth is class independent") {
  NoiseModel noise = gaussian_noise(1.0);
  Bandwidth a = adaptive_bandwidth(noise, 1000000);
  CHECK(a.h == doctest::Approx(0.3146803792521381).epsilon(1e-12));
  CHECK(a.residual == 0.0);
  // needs log n / (2 beta) > 1, i.e. n > e when beta = 1/2
  CHECK_THROWS_AS(adaptive_bandwidth(noise, 2), ModelError);
}

TEST_CASE("critical-regime adaptive bandwidth") {
  NoiseModel noise = gaussian_noise(1.0);
  Bandwidth c = adaptive_bandwidth_critical(noise, 1000000, 1.2, 1.0);
  CHECK(c.h == doctest::Approx(0.45198935601453927).epsilon(1e-12));
  // a larger overshoot constant widens the bandwidth
  Bandwidth c2 = adaptive_bandwidth_critical(noise, 1000000, 1.5, 1.0);
  CHECK(c2.h > c.h);
  CHECK_THROWS_AS(adaptive_bandwidth_critical(noise, 1000000, 0.9, 1.0),
                  ValidationError);
  CHECK_THROWS_AS(adaptive_bandwidth_critical(noise, 1000000, 1.2, 0.0),
                  ValidationError);

  CHECK(critical_inflation(1.0, 1.2, 0.5) ==
        doctest::Approx(1.4918246976412703).epsilon(1e-14));
  CHECK(critical_inflation(1.0, 1.0, 0.5) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("rates at the solved bandwidth") {
  NoiseModel noise = gaussian_noise(1.0);
  RateValue rv = rates(kCls, noise, 1000000);
  CHECK(rv.l2 == doctest::Approx(0.008450858417746005).epsilon(1e-12));
  CHECK(rv.pointwise == doctest::Approx(0.0013449958905540301).epsilon(1e-12));
  CHECK(rv.h_used.h == doctest::Approx(0.5511528593981729).epsilon(1e-12));
  // structural link between the two losses
  double link = std::pow(rv.h_used.h, kCls.r - 1.0) / (2.0 * pi * kCls.alpha * kCls.r);
  CHECK(rv.pointwise == doctest::Approx(rv.l2 * link).epsilon(1e-12));
  // r = s/2 closed forms are defined and positive here
  CHECK(std::isfinite(rv.closed_form_l2));
  CHECK(rv.closed_form_l2 > 0.0);
  CHECK(std::isfinite(rv.closed_form_pointwise));

  // r > s/2: no closed form
  SmoothnessClass super{1.0, 1.5, 1.0};
  RateValue rv2 = rates(super, noise, 1000000);
  CHECK_FALSE(std::isfinite(rv2.closed_form_l2));

  // rates decrease along an n sweep
  double last_l2 = 1e300, last_pw = 1e300;
  for (std::int64_t n : {10000LL, 1000000LL, 100000000LL, 10000000000LL}) {
    RateValue r = rates(kCls, noise, n);
    CHECK(r.l2 < last_l2);
    CHECK(r.pointwise < last_pw);
    last_l2 = r.l2;
    last_pw = r.pointwise;
  }
}

TEST_CASE("closed-form rate is a lower envelope of the solved rate") {
  // the iterated-log correction in the bandwidth equation makes the ratio
  // non-monotone over practical n (the gap keeps widening until n is
  // astronomically large), so only the bracketing property is stable
  NoiseModel noise = gaussian_noise(1.0);
  for (std::int64_t n : {10000LL, 100000000LL, 1000000000000LL}) {
    RateValue rv = rates(kCls, noise, n);
    double ratio = rv.closed_form_l2 / rv.l2;
    CHECK(ratio > 0.0);
    CHECK(ratio < 1.0);
  }
}

TEST_CASE("asymptotic consistency sweep") {
  NoiseModel noise = gaussian_noise(1.0);
  std::vector<std::int64_t> sweep{10000, 1000000, 100000000, 10000000000,
                                  1000000000000};
  AsymptoticsReport rep = bandwidth_asymptotics_check(kCls, noise, sweep);
  REQUIRE(rep.rows.size() == sweep.size());
  CHECK(rep.aa_toward_one);
  CHECK(rep.plus_toward_one);
  CHECK(rep.variance_vanishing);
  // n = 1e6 row: variance-to-bias ratio (1/n) e^{2b/h*^s} / e^{-2a/h*^r}
  const AsymptoticsRow& row = rep.rows[1];
  CHECK(row.n == 1000000);
  CHECK(row.ratio_b == doctest::Approx(1.014e-3).epsilon(0.05));
  CHECK(rep.rows.back().ratio_b < rep.rows.front().ratio_b);
}
