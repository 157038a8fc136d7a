#include "deconv/grid.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace deconv {

namespace {
constexpr double kPi = std::numbers::pi;

bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }
}  // namespace

Grid::Grid(std::size_t n, double xmax) : n_points(n), x_max(xmax) {
  if (n_points < 8 || !is_pow2(n_points))
    throw std::invalid_argument("Grid: n_points must be a power of two >= 8");
  if (!(x_max > 0)) throw std::invalid_argument("Grid: x_max must be positive");
}

double Grid::freq_spacing() const { return kPi / x_max; }

Grid Grid::kernel_default() {
  // freq spacing 2/(2m+1) with m = 3216 puts |u| = 1 exactly between samples.
  const double du = 2.0 / 6433.0;
  return Grid(1u << 19, kPi / du);
}

GriddedFunction::GriddedFunction(Grid g, Domain d)
    : grid(g), domain(d), values(g.n_points) {}

GriddedFunction::GriddedFunction(Grid g, Domain d,
                                 std::vector<std::complex<double>> v)
    : grid(g), domain(d), values(std::move(v)) {
  if (values.size() != grid.n_points)
    throw std::invalid_argument("GriddedFunction: values length != n_points");
}

GriddedFunction sample_space(const Grid& g,
                             const std::function<std::complex<double>(double)>& f) {
  GriddedFunction out(g, Domain::Space);
  for (std::size_t j = 0; j < g.n_points; ++j) out.values[j] = f(g.x(j));
  return out;
}

GriddedFunction sample_frequency(const Grid& g,
                                 const std::function<std::complex<double>(double)>& f) {
  GriddedFunction out(g, Domain::Frequency);
  for (std::size_t k = 0; k < g.n_points; ++k) out.values[k] = f(g.u(k));
  return out;
}

void fft_inplace(std::vector<std::complex<double>>& a, int sign) {
  const std::size_t n = a.size();
  if (!is_pow2(n)) throw std::invalid_argument("fft: length must be a power of two");

  // bit reversal
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }

  // twiddle table for the largest stage, strided for smaller ones
  std::vector<std::complex<double>> tw(n / 2);
  for (std::size_t i = 0; i < n / 2; ++i) {
    double ang = sign * 2.0 * kPi * static_cast<double>(i) / static_cast<double>(n);
    tw[i] = {std::cos(ang), std::sin(ang)};
  }

  for (std::size_t len = 2; len <= n; len <<= 1) {
    const std::size_t stride = n / len;
    for (std::size_t i = 0; i < n; i += len) {
      for (std::size_t k = 0; k < len / 2; ++k) {
        std::complex<double> u = a[i + k];
        std::complex<double> v = a[i + k + len / 2] * tw[k * stride];
        a[i + k] = u + v;
        a[i + k + len / 2] = u - v;
      }
    }
  }
}

GriddedFunction forward_transform(const GriddedFunction& g) {
  if (g.domain != Domain::Space)
    throw std::invalid_argument("forward_transform: input must be space-domain");
  const std::size_t n = g.grid.n_points;
  std::vector<std::complex<double>> a(n);
  for (std::size_t j = 0; j < n; ++j)
    a[j] = (j & 1) ? -g.values[j] : g.values[j];
  fft_inplace(a, +1);
  const double dx = g.grid.spacing();
  GriddedFunction out(g.grid, Domain::Frequency);
  for (std::size_t k = 0; k < n; ++k)
    out.values[k] = ((k & 1) ? -dx : dx) * a[k];
  return out;
}

GriddedFunction inverse_transform(const GriddedFunction& g) {
  if (g.domain != Domain::Frequency)
    throw std::invalid_argument("inverse_transform: input must be frequency-domain");
  const std::size_t n = g.grid.n_points;
  std::vector<std::complex<double>> a(n);
  for (std::size_t k = 0; k < n; ++k)
    a[k] = (k & 1) ? -g.values[k] : g.values[k];
  fft_inplace(a, -1);
  const double scale = 1.0 / (2.0 * g.grid.x_max);  // du/(2 pi)
  GriddedFunction out(g.grid, Domain::Space);
  for (std::size_t j = 0; j < n; ++j)
    out.values[j] = ((j & 1) ? -scale : scale) * a[j];
  return out;
}

double grid_integral(const GriddedFunction& g) {
  double s = 0.0;
  for (const auto& v : g.values) s += v.real();
  return s * g.step();
}

double grid_l2_norm_sq(const GriddedFunction& g) {
  double s = 0.0;
  for (const auto& v : g.values) s += std::norm(v);
  return s * g.step();
}

double max_abs(const GriddedFunction& g) {
  double m = 0.0;
  for (const auto& v : g.values) m = std::max(m, std::abs(v));
  return m;
}

double max_abs_imag(const GriddedFunction& g) {
  double m = 0.0;
  for (const auto& v : g.values) m = std::max(m, std::fabs(v.imag()));
  return m;
}

}  // namespace deconv
