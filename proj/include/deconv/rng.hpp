#pragma once

#include <cstdint>
#include <random>

namespace deconv {

/// Counter-based derivation of per-replication seeds from a master seed.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

/// Deterministic generator with explicitly coded transforms, so that draws
/// are reproducible bit-for-bit across standard library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  /// Uniform on (0, 1].
  double uniform();
  double normal();       // Box-Muller
  double exponential();  // rate 1
  double cauchy();       // scale 1

  /// Standard symmetric stable with cf exp(-|t|^a), 0 < a <= 2
  /// (Chambers-Mallows-Stuck).
  double stable(double a);

 private:
  std::mt19937_64 eng_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace deconv
