#pragma once

#include <cstdint>
#include <vector>

#include "deconv/grid.hpp"
#include "deconv/models.hpp"

namespace deconv {

/// Deconvolution kernel with spectral cutoff at |u| = 1: its characteristic
/// function is I(|u| <= 1) / Phi_eps(u / h).
struct DeconvKernel {
  double h;
  GriddedFunction phi_k;    // frequency domain, vanishes for |u| > 1
  GriddedFunction k_space;  // real-valued kernel by inversion
  double l2_norm_sq;        // equals (h/2pi) int_{|u|<=1/h} |Phi_eps|^{-2} du
};

struct DensityEstimate {
  GriddedFunction values;
  double h;
  std::size_t n_samples;
  double imag_residue;  // sup-norm of the dropped imaginary part
};

/// Builds the kernel on the given grid. Refuses h for which the noise
/// amplification exp(2 beta / h^s) overflows double precision; requires the
/// grid's frequency extent to exceed the cutoff.
DeconvKernel build_kernel(const NoiseModel& noise, double h, const Grid& grid);

/// Kernel estimator evaluated through the frequency domain: the empirical cf
/// is divided by Phi_eps below the cutoff frequency 1/h and inverted.
DensityEstimate estimate_density(const std::vector<double>& samples,
                                 const NoiseModel& noise, double h,
                                 const Grid& grid);

/// Brute-force space-domain sum (1/nh) sum_i K_n((x - Y_i)/h) with the kernel
/// evaluated by the same discrete frequency sum; test oracle only, O(n * grid).
GriddedFunction estimate_density_direct(const std::vector<double>& samples,
                                        const NoiseModel& noise, double h,
                                        const Grid& grid);

/// Exact l2 truncation bias (1/2pi) int_{|uh|>1} |Phi_X(u)|^2 du.
double exact_bias_l2(const CfFunction& target_cf, double h);

/// Exact pointwise truncation bias -(1/2pi) int_{|uh|>1} Phi_X(u) e^{-iux} du.
double exact_bias_pointwise(const CfFunction& target_cf, double h, double x);

/// Variance envelope ||K_n||_2^2 / (n h) from the kernel-norm identity.
double variance_functional_l2(const NoiseModel& noise, double h, std::int64_t n);

}  // namespace deconv
