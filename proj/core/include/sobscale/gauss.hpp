#pragma once

#include <cstddef>
#include <vector>

namespace sobscale {

/// Nodes and weights of an n-point Gauss-Legendre rule on [a, b].
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;

  std::size_t size() const { return nodes.size(); }

  /// Integrate a callable over the rule's interval.
  template <typename F>
  auto integrate(F&& f) const -> decltype(f(0.0) * 0.0) {
    decltype(f(0.0) * 0.0) acc{};
    for (std::size_t i = 0; i < nodes.size(); ++i)
      acc += weights[i] * f(nodes[i]);
    return acc;
  }
};

/// n-point Gauss-Legendre rule on [-1, 1]; nodes from Newton iteration on
/// the Legendre recurrence, converged to machine precision.
QuadratureRule gauss_legendre(std::size_t n);

/// Same rule mapped to [a, b].
QuadratureRule gauss_legendre(std::size_t n, double a, double b);

} // namespace sobscale
