#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <stdexcept>

namespace sobscale {

/// Mode vector; k[1] is ignored in dimension 1.
using Mode = std::array<int, 2>;

/// <k> = (1 + |k|^2)^{1/2}.
inline double smoothed_modulus(const Mode& k, int dim) {
  double q = static_cast<double>(k[0]) * k[0];
  if (dim == 2) q += static_cast<double>(k[1]) * k[1];
  return std::sqrt(1.0 + q);
}

/// Truncated symmetric frequency lattice on the n-torus: modes k with
/// |k_i| <= K, canonical order k1 outer, k2 inner, each running -K..K.
/// The spatial grid has the same resolution (2K+1 points per dimension at
/// x_j = 2*pi*j/(2K+1)), so coefficients and grid samples are in bijection.
struct Lattice {
  int dim = 1;
  int cutoff = 1;

  Lattice() = default;
  Lattice(int n, int K) : dim(n), cutoff(K) {
    if (n != 1 && n != 2) throw std::invalid_argument("Lattice: dim must be 1 or 2");
    if (K < 1) throw std::invalid_argument("Lattice: cutoff must be >= 1");
  }

  int side() const { return 2 * cutoff + 1; }

  std::size_t mode_count() const {
    const auto m = static_cast<std::size_t>(side());
    return dim == 1 ? m : m * m;
  }

  std::size_t index(const Mode& k) const {
    const int K = cutoff;
    if (dim == 1) return static_cast<std::size_t>(k[0] + K);
    return static_cast<std::size_t>(k[0] + K) * static_cast<std::size_t>(side()) +
           static_cast<std::size_t>(k[1] + K);
  }

  Mode mode_at(std::size_t idx) const {
    const int K = cutoff;
    if (dim == 1) return {static_cast<int>(idx) - K, 0};
    const int m = side();
    return {static_cast<int>(idx) / m - K, static_cast<int>(idx) % m - K};
  }

  bool contains(const Mode& k) const {
    if (std::abs(k[0]) > cutoff) return false;
    if (dim == 2 && std::abs(k[1]) > cutoff) return false;
    return true;
  }

  double modulus_at(std::size_t idx) const { return smoothed_modulus(mode_at(idx), dim); }

  bool operator==(const Lattice& other) const = default;
};

} // namespace sobscale
