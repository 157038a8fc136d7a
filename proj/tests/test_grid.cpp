#include <cmath>
#include <complex>
#include <numbers>

#include "deconv/grid.hpp"
#include "doctest.h"

using namespace deconv;
using std::numbers::pi;

TEST_CASE("grid geometry") {
  Grid g(1u << 10, 16.0);
  CHECK(g.spacing() == doctest::Approx(32.0 / 1024.0).epsilon(1e-15));
  CHECK(g.freq_spacing() == doctest::Approx(pi / 16.0).epsilon(1e-15));
  CHECK(g.freq_max() == doctest::Approx(512.0 * pi / 16.0).epsilon(1e-15));
  CHECK(g.x(512) == 0.0);
  CHECK(g.u(512) == 0.0);
  CHECK_THROWS(Grid(100, 16.0));   // not a power of two
  CHECK_THROWS(Grid(4, 16.0));     // too small
  CHECK_THROWS(Grid(256, -1.0));

  Grid kd = Grid::kernel_default();
  // cutoff |u| = 1 must sit exactly between two frequency samples
  double du = kd.freq_spacing();
  double pos = 1.0 / du;
  CHECK(std::fabs(pos - std::floor(pos) - 0.5) < 1e-9);
}

TEST_CASE("forward transform of a gaussian density") {
  Grid g(1u << 12, 32.0);
  auto dens = sample_space(g, [](double x) {
    return std::complex<double>(std::exp(-0.5 * x * x) / std::sqrt(2.0 * pi), 0.0);
  });
  auto cf = forward_transform(dens);
  double worst = 0.0;
  for (std::size_t k = 0; k < cf.values.size(); ++k) {
    double u = cf.coord(k);
    worst = std::max(worst, std::abs(cf.values[k] - std::exp(-0.5 * u * u)));
  }
  CHECK(worst < 1e-8);
}

TEST_CASE("forward transform of a heavy-tailed density") {
  // wide grid so the cauchy tail truncation stays below the tolerance
  Grid g(1u << 16, 8192.0);
  auto dens = sample_space(g, [](double x) {
    return std::complex<double>(1.0 / (pi * (1.0 + x * x)), 0.0);
  });
  auto cf = forward_transform(dens);
  double worst = 0.0;
  for (std::size_t k = 0; k < cf.values.size(); ++k) {
    double u = cf.coord(k);
    if (std::fabs(u) > 10.0) continue;
    worst = std::max(worst, std::abs(cf.values[k] - std::exp(-std::fabs(u))));
  }
  CHECK(worst < 1e-4);
}

TEST_CASE("round trip is exact to rounding") {
  Grid g(1u << 12, 32.0);
  auto dens = sample_space(g, [](double x) {
    return std::complex<double>(std::exp(-0.5 * x * x) + 0.1 * std::cos(x), 0.0);
  });
  auto back = inverse_transform(forward_transform(dens));
  double worst = 0.0, scale = 0.0;
  for (std::size_t j = 0; j < back.values.size(); ++j) {
    worst = std::max(worst, std::abs(back.values[j] - dens.values[j]));
    scale = std::max(scale, std::abs(dens.values[j]));
  }
  CHECK(worst / scale < 1e-10);
}

TEST_CASE("inverse transform of the spectral indicator is the sinc kernel") {
  Grid g(1u << 18, 4096.0);
  auto ind = sample_frequency(g, [](double u) {
    return std::complex<double>(std::fabs(u) <= 1.0 ? 1.0 : 0.0, 0.0);
  });
  auto k = inverse_transform(ind);
  double worst = 0.0;
  for (std::size_t j = 0; j < k.values.size(); ++j) {
    double x = k.coord(j);
    if (std::fabs(x) > 100.0) continue;
    double truth = std::fabs(x) < 1e-12 ? 1.0 / pi : std::sin(x) / (pi * x);
    worst = std::max(worst, std::abs(k.values[j] - truth));
  }
  CHECK(worst < 1e-3);
}

TEST_CASE("inverse transform of a gaussian cf") {
  Grid g(1u << 12, 32.0);
  auto cf = sample_frequency(g, [](double u) {
    return std::complex<double>(std::exp(-0.5 * u * u), 0.0);
  });
  auto dens = inverse_transform(cf);
  double worst = 0.0;
  for (std::size_t j = 0; j < dens.values.size(); ++j) {
    double x = dens.coord(j);
    worst = std::max(
        worst, std::abs(dens.values[j] - std::exp(-0.5 * x * x) / std::sqrt(2.0 * pi)));
  }
  CHECK(worst < 1e-8);
  CHECK(max_abs_imag(dens) < 1e-12);
  CHECK(grid_integral(dens) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("discrete parseval identity") {
  Grid g(1u << 12, 32.0);
  auto dens = sample_space(g, [](double x) {
    return std::complex<double>(std::exp(-0.5 * x * x), 0.0);
  });
  auto cf = forward_transform(dens);
  double lhs = grid_l2_norm_sq(dens);
  double rhs = grid_l2_norm_sq(cf) / (2.0 * pi);
  CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
  // closed form: int exp(-x^2) dx = sqrt(pi)
  CHECK(lhs == doctest::Approx(std::sqrt(pi)).epsilon(1e-10));
}

TEST_CASE("real even frequency data inverts to real space data") {
  Grid g(1u << 10, 16.0);
  auto cf = sample_frequency(g, [](double u) {
    return std::complex<double>(std::exp(-std::fabs(u)), 0.0);
  });
  auto dens = inverse_transform(cf);
  CHECK(max_abs_imag(dens) < 1e-10 * max_abs(dens));
}

TEST_CASE("zero in, zero out") {
  Grid g(256, 4.0);
  GriddedFunction z(g, Domain::Space);
  auto out = forward_transform(z);
  CHECK(max_abs(out) == 0.0);
}
