#pragma once

#include <complex>
#include <iosfwd>
#include <vector>

#include "sobscale/ro_weight.hpp"

namespace sobscale {

/// Fourier series on the boundary circle: coefficients g_k, |k| <= K.
/// Normalization matches the torus fields: the single mode e^{i k theta} has
/// weighted norm phi(<k>).
class BoundaryField {
public:
  BoundaryField() = default;
  explicit BoundaryField(int cutoff)
      : cutoff_(cutoff), coeffs_(static_cast<std::size_t>(2 * cutoff + 1), 0.0) {}

  int cutoff() const { return cutoff_; }
  std::size_t size() const { return coeffs_.size(); }

  std::complex<double> at(int k) const { return coeffs_[index(k)]; }
  void set(int k, std::complex<double> v) { coeffs_[index(k)] = v; }
  const std::vector<std::complex<double>>& coeffs() const { return coeffs_; }

  bool is_real_valued(double tol = 1e-12) const;

  /// L2(circle) pairing: integral over the circle of a * conj(b).
  static std::complex<double> circle_inner(const BoundaryField& a, const BoundaryField& b);

private:
  std::size_t index(int k) const { return static_cast<std::size_t>(k + cutoff_); }

  int cutoff_ = 0;
  std::vector<std::complex<double>> coeffs_;
};

/// (sum_k phi^2(<k>) |g_k|^2)^{1/2}.
double gamma_norm(const BoundaryField& g, const RoWeight& phi);

/// CSV round trip, columns k,re,im with a "# circle,K" header.
void write_csv(const BoundaryField& g, std::ostream& os);
BoundaryField read_boundary_csv(std::istream& is);

} // namespace sobscale
