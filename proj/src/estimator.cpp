#include "deconv/estimator.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>

#include "deconv/quadrature.hpp"

namespace deconv {

namespace {

constexpr double kPi = std::numbers::pi;

void check_amplification(const NoiseModel& noise, double h) {
  if (!(h > 0)) throw ValidationError("h", "bandwidth must be positive");
  if (noise.beta <= 0) return;
  double expo = 2.0 * noise.beta * std::pow(h, -noise.s);
  if (expo > 700.0 - std::log(1.0 / noise.b_min)) {
    std::ostringstream os;
    os << "kernel amplification exp(" << expo
       << ") overflows double precision; increase h";
    throw ModelError(os.str());
  }
}

std::complex<double> noise_cf_checked(const NoiseModel& noise, double u) {
  std::complex<double> c = noise.cf(u);
  if (std::abs(c) < 1e-300)
    throw ModelError("noise cf vanishes at u = " + std::to_string(u));
  return c;
}

}  // namespace

DeconvKernel build_kernel(const NoiseModel& noise, double h, const Grid& grid) {
  check_amplification(noise, h);
  if (!(grid.freq_max() > 1.0))
    throw ValidationError("grid", "frequency extent must exceed the cutoff |u| = 1");

  GriddedFunction phi(grid, Domain::Frequency);
  for (std::size_t k = 0; k < grid.n_points; ++k) {
    double u = grid.u(k);
    if (std::fabs(u) <= 1.0) phi.values[k] = 1.0 / noise_cf_checked(noise, u / h);
  }
  GriddedFunction k_space = inverse_transform(phi);

  double re_sup = 0.0;
  for (const auto& v : k_space.values) re_sup = std::max(re_sup, std::fabs(v.real()));
  if (max_abs_imag(k_space) > 1e-8 * re_sup)
    throw ModelError("kernel inversion produced a non-negligible imaginary part");

  double norm_sq = grid_l2_norm_sq(phi) / (2.0 * kPi);
  return DeconvKernel{h, std::move(phi), std::move(k_space), norm_sq};
}

DensityEstimate estimate_density(const std::vector<double>& samples,
                                 const NoiseModel& noise, double h,
                                 const Grid& grid) {
  if (samples.empty()) throw ValidationError("samples", "need at least one sample");
  check_amplification(noise, h);
  const std::size_t n = grid.n_points;
  const double cut = 1.0 / h;
  const double du = grid.freq_spacing();

  // frequency indices below the cutoff |u| <= 1/h
  std::size_t k_lo = n, k_hi = 0;
  for (std::size_t k = 0; k < n; ++k) {
    if (std::fabs(grid.u(k)) <= cut) {
      k_lo = std::min(k_lo, k);
      k_hi = std::max(k_hi, k);
    }
  }
  if (k_lo > k_hi) throw ValidationError("grid", "cutoff below frequency spacing");

  const std::size_t m = k_hi - k_lo + 1;
  std::vector<std::complex<double>> ecf(m, 0.0);
  const double u_lo = grid.u(k_lo);
  for (double y : samples) {
    // e^{i u y} advanced by multiplication along the frequency window
    std::complex<double> z = std::polar(1.0, u_lo * y);
    const std::complex<double> step = std::polar(1.0, du * y);
    for (std::size_t j = 0; j < m; ++j) {
      ecf[j] += z;
      z *= step;
    }
  }

  GriddedFunction phi_hat(grid, Domain::Frequency);
  const double inv_n = 1.0 / static_cast<double>(samples.size());
  for (std::size_t j = 0; j < m; ++j) {
    double u = grid.u(k_lo + j);
    phi_hat.values[k_lo + j] = ecf[j] * inv_n / noise_cf_checked(noise, u);
  }

  GriddedFunction est = inverse_transform(phi_hat);
  double re_sup = 0.0;
  for (const auto& v : est.values) re_sup = std::max(re_sup, std::fabs(v.real()));
  double residue = max_abs_imag(est);
  if (residue > 1e-6 * re_sup)
    throw ModelError("estimate inversion produced a non-negligible imaginary part");
  for (auto& v : est.values) v = v.real();
  return DensityEstimate{std::move(est), h, samples.size(), residue};
}

GriddedFunction estimate_density_direct(const std::vector<double>& samples,
                                        const NoiseModel& noise, double h,
                                        const Grid& grid) {
  if (samples.empty()) throw ValidationError("samples", "need at least one sample");
  check_amplification(noise, h);
  const std::size_t n = grid.n_points;
  const double cut = 1.0 / h;
  const double du = grid.freq_spacing();

  std::vector<double> us;
  std::vector<std::complex<double>> inv_cf;
  for (std::size_t k = 0; k < n; ++k) {
    double u = grid.u(k);
    if (std::fabs(u) <= cut) {
      us.push_back(u);
      inv_cf.push_back(1.0 / noise_cf_checked(noise, u));
    }
  }

  GriddedFunction out(grid, Domain::Space);
  const double scale = du / (2.0 * kPi) / static_cast<double>(samples.size());
  for (std::size_t j = 0; j < n; ++j) {
    double x = grid.x(j);
    std::complex<double> acc = 0.0;
    for (double y : samples) {
      std::complex<double> kernel_sum = 0.0;
      for (std::size_t k = 0; k < us.size(); ++k)
        kernel_sum += inv_cf[k] * std::polar(1.0, -us[k] * (x - y));
      acc += kernel_sum;
    }
    out.values[j] = scale * acc.real();
  }
  return out;
}

double exact_bias_l2(const CfFunction& target_cf, double h) {
  if (!(h > 0)) throw ValidationError("h", "bandwidth must be positive");
  double v = 1.0 / h;
  return quadrature_to_inf(
             [&](double u) {
               double mod = std::abs(target_cf(u));
               return mod * mod;
             },
             v, 1e-13) /
         kPi;
}

double exact_bias_pointwise(const CfFunction& target_cf, double h, double x) {
  if (!(h > 0)) throw ValidationError("h", "bandwidth must be positive");
  double v = 1.0 / h;
  return -quadrature_to_inf(
             [&](double u) {
               std::complex<double> c = target_cf(u);
               return c.real() * std::cos(u * x) + c.imag() * std::sin(u * x);
             },
             v, 1e-13) /
         kPi;
}

double variance_functional_l2(const NoiseModel& noise, double h, std::int64_t n) {
  if (n < 1) throw ValidationError("n", "need n >= 1");
  DeconvKernel k = build_kernel(noise, h, Grid::kernel_default());
  return k.l2_norm_sq / (static_cast<double>(n) * h);
}

}  // namespace deconv
