#pragma once

#include <complex>
#include <cstdint>
#include <random>

namespace sobscale {

/// Deterministic random stream. mt19937_64 has a pinned algorithm in the
/// standard; the uniform/gaussian transforms below are written out by hand so
/// that a given seed produces the same values on every platform (the standard
/// library distributions are implementation-defined).
class Rng {
public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform double in [0, 1).
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  /// Uniform double in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Standard normal via Box-Muller.
  double gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = uniform();
    double u2 = uniform();
    while (u1 <= 0x1.0p-60) u1 = uniform();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 6.283185307179586476925286766559 * u2;
    spare_ = radius * std::sin(angle);
    have_spare_ = true;
    return radius * std::cos(angle);
  }

  /// Complex gaussian with unit total variance (Re and Im each variance 1/2).
  std::complex<double> gaussian_complex() {
    const double inv_sqrt2 = 0.70710678118654752440;
    return {gaussian() * inv_sqrt2, gaussian() * inv_sqrt2};
  }

  std::uint64_t bits() { return engine_(); }

private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

} // namespace sobscale
