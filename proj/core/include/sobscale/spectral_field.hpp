#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <vector>

#include "sobscale/lattice.hpp"
#include "sobscale/ro_weight.hpp"

namespace sobscale {

/// A distribution on the n-torus given by its Fourier coefficients on a
/// truncated lattice. Normalization: the single mode e^{i k.x} has
/// coefficient 1, so its weighted norm is exactly phi(<k>).
class SpectralField {
public:
  SpectralField() = default;
  explicit SpectralField(const Lattice& lat)
      : lattice_(lat), coeffs_(lat.mode_count(), 0.0) {}
  SpectralField(const Lattice& lat, std::vector<std::complex<double>> c);

  const Lattice& lattice() const { return lattice_; }
  const std::vector<std::complex<double>>& coeffs() const { return coeffs_; }
  std::vector<std::complex<double>>& coeffs() { return coeffs_; }

  std::complex<double> at(const Mode& k) const { return coeffs_[lattice_.index(k)]; }
  void set(const Mode& k, std::complex<double> v) { coeffs_[lattice_.index(k)] = v; }

  bool all_finite() const;
  /// Conjugate symmetry c(-k) == conj(c(k)) within `tol`.
  bool is_real_valued(double tol = 1e-12) const;

  /// Truncate to a smaller cutoff (coefficients outside are dropped).
  SpectralField truncated(int new_cutoff) const;

  /// Coefficient-wise multiplier m(<k>).
  SpectralField multiplied(const std::function<double(double)>& multiplier) const;

private:
  Lattice lattice_;
  std::vector<std::complex<double>> coeffs_;
};

/// (sum_k phi^2(<k>) |c_k|^2)^{1/2}; summation in canonical mode order.
double h_norm(const SpectralField& u, const RoWeight& phi);

/// Sobolev shorthand: h_norm with weight t^s.
double sobolev_norm(const SpectralField& u, double s);

/// c_k = gaussian(seed stream) / decay(<k>), drawn in canonical mode order.
SpectralField random_field(std::uint64_t seed, const RoWeight& decay, const Lattice& lat);

/// (1 - Laplacian) u: the multiplier <k>^2.
SpectralField helmholtz_apply(const SpectralField& u);

/// CSV round trip. Format: one "# lattice,dim,K" header line, then a
/// "k1,k2,re,im" column header, then one row per mode in canonical order
/// (k2 = 0 in dimension 1).
void write_csv(const SpectralField& u, std::ostream& os);
SpectralField read_field_csv(std::istream& is);

} // namespace sobscale
