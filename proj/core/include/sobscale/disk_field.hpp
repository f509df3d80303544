#pragma once

#include <complex>
#include <iosfwd>
#include <map>
#include <vector>

#include "sobscale/boundary_field.hpp"
#include "sobscale/gauss.hpp"
#include "sobscale/rng.hpp"

namespace sobscale {

/// A smooth function on the unit disk written per angular mode as a short
/// polynomial in r with the parity/regularity structure of the disk:
///   u = sum_k e^{i k theta} sum_j c_{k,j} r^{|k| + 2j}.
/// Closed under the Laplacian, so boundary traces, volume data and exact
/// inner products are all available in closed form. This is the sample
/// family used by the verification drivers.
class DiskPolynomial {
public:
  DiskPolynomial() = default;
  explicit DiskPolynomial(int cutoff) : cutoff_(cutoff) {}

  static DiskPolynomial constant(std::complex<double> value);

  int cutoff() const { return cutoff_; }

  /// Coefficient of e^{ik theta} r^{|k|+2j}.
  void add_term(int k, int j, std::complex<double> c);
  std::complex<double> coefficient(int k, int j) const;
  int max_extra_power(int k) const;  // largest j with a nonzero coefficient

  std::complex<double> eval_mode(int k, double r) const;
  std::complex<double> eval(double r, double theta) const;

  DiskPolynomial laplacian() const;
  DiskPolynomial negated() const;

  /// Boundary series of u, du/dr, Lap u, d(Lap u)/dr at r = 1.
  BoundaryField trace() const;
  BoundaryField radial_trace() const;
  BoundaryField laplacian_trace() const;
  BoundaryField laplacian_radial_trace() const;

  /// Exact integral over the disk of u * conj(v) (area measure).
  static std::complex<double> disk_inner(const DiskPolynomial& u, const DiskPolynomial& v);
  double l2_norm() const;
  /// Integral of u over the disk (pairing with the constant 1).
  std::complex<double> disk_mean_integral() const;

  /// u minus its disk average (projection off the constants).
  DiskPolynomial without_mean() const;

  bool empty() const { return terms_.empty(); }

private:
  int cutoff_ = 0;
  // (k, j) -> coefficient; deterministic iteration order
  std::map<std::pair<int, int>, std::complex<double>> terms_;
};

/// Seeded random sample: modes |k| <= mode_cap, extra powers j <= power_cap,
/// coefficients gaussian scaled by <k>^{-decay} / (1+j)^2.
DiskPolynomial random_disk_polynomial(Rng& rng, int mode_cap, int power_cap,
                                      double decay);

/// A distribution on the disk sampled per angular mode on a radial
/// Gauss-Legendre grid; the output type of the mode-wise solvers.
class DiskField {
public:
  DiskField() = default;
  DiskField(int cutoff, QuadratureRule radial);

  int cutoff() const { return cutoff_; }
  const QuadratureRule& radial() const { return radial_; }
  const std::vector<std::complex<double>>& profile(int k) const {
    return profiles_[static_cast<std::size_t>(k + cutoff_)];
  }
  std::vector<std::complex<double>>& profile(int k) {
    return profiles_[static_cast<std::size_t>(k + cutoff_)];
  }

  /// Barycentric interpolation of the mode profile at radius r in [0, 1].
  std::complex<double> eval_mode(int k, double r) const;
  std::complex<double> eval(double r, double theta) const;

  /// L2(disk) norm via the radial rule and mode orthogonality.
  double l2_norm() const;

  /// CSV export, columns k,r,re,im.
  void write_csv(std::ostream& os) const;

private:
  int cutoff_ = 0;
  QuadratureRule radial_;
  std::vector<double> bary_weights_;
  std::vector<std::vector<std::complex<double>>> profiles_;
};

} // namespace sobscale
