#include "deconv/rng.hpp"

#include <cmath>
#include <numbers>

namespace deconv {

namespace {
constexpr double kPi = std::numbers::pi;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}
}  // namespace

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  return splitmix64(splitmix64(master) ^ splitmix64(index * 0xD6E8FEB86659FD93ull + 1));
}

double Rng::uniform() {
  // top 53 bits, shifted into (0, 1]
  return (static_cast<double>(eng_() >> 11) + 1.0) * 0x1.0p-53;
}

double Rng::normal() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  double u1 = uniform(), u2 = uniform();
  double rad = std::sqrt(-2.0 * std::log(u1));
  double ang = 2.0 * kPi * u2;
  spare_ = rad * std::sin(ang);
  have_spare_ = true;
  return rad * std::cos(ang);
}

double Rng::exponential() { return -std::log(uniform()); }

double Rng::cauchy() { return std::tan(kPi * (uniform() - 0.5)); }

double Rng::stable(double a) {
  double v = kPi * (uniform() - 0.5);
  if (a == 1.0) return std::tan(v);
  double w = exponential();
  return std::sin(a * v) / std::pow(std::cos(v), 1.0 / a) *
         std::pow(std::cos((1.0 - a) * v) / w, (1.0 - a) / a);
}

}  // namespace deconv
