#include "sobscale/partial_sum.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>

namespace sobscale {

namespace {

// (i k)^m for integer k and m >= 0
std::complex<double> ik_power(int k, int m) {
  std::complex<double> p = 1.0;
  const std::complex<double> base(0.0, static_cast<double>(k));
  for (int j = 0; j < m; ++j) p *= base;
  return p;
}

double sup_partial_sum_1d(const SpectralField& u, int mu, int grid_points) {
  const int K = u.lattice().cutoff;
  const double step = 2.0 * 3.14159265358979323846 / grid_points;
  double sup = 0.0;
  for (int j = 0; j < grid_points; ++j) {
    const double x = step * j;
    std::complex<double> acc = 0.0;
    for (int k = -K; k <= K; ++k) {
      const std::complex<double> phase(std::cos(k * x), std::sin(k * x));
      acc += u.at({k, 0}) * ik_power(k, mu) * phase;
    }
    sup = std::max(sup, std::abs(acc));
  }
  return sup;
}

double sup_partial_sum_2d(const SpectralField& u, const Mode& mu, int grid_points) {
  const int K = u.lattice().cutoff;
  const int side = 2 * K + 1;
  const double step = 2.0 * 3.14159265358979323846 / grid_points;

  // factorized evaluation: collapse k2 first, then k1
  std::vector<std::complex<double>> tmp(static_cast<std::size_t>(side) * grid_points);
  for (int k1 = -K; k1 <= K; ++k1) {
    for (int j2 = 0; j2 < grid_points; ++j2) {
      const double x2 = step * j2;
      std::complex<double> acc = 0.0;
      for (int k2 = -K; k2 <= K; ++k2) {
        const std::complex<double> phase(std::cos(k2 * x2), std::sin(k2 * x2));
        acc += u.at({k1, k2}) * ik_power(k2, mu[1]) * phase;
      }
      tmp[static_cast<std::size_t>(k1 + K) * grid_points + j2] = acc;
    }
  }
  double sup = 0.0;
  for (int j1 = 0; j1 < grid_points; ++j1) {
    const double x1 = step * j1;
    std::vector<std::complex<double>> row(static_cast<std::size_t>(grid_points), 0.0);
    for (int k1 = -K; k1 <= K; ++k1) {
      const std::complex<double> factor =
          ik_power(k1, mu[0]) *
          std::complex<double>(std::cos(k1 * x1), std::sin(k1 * x1));
      const auto* src = &tmp[static_cast<std::size_t>(k1 + K) * grid_points];
      for (int j2 = 0; j2 < grid_points; ++j2) row[static_cast<std::size_t>(j2)] += factor * src[j2];
    }
    for (int j2 = 0; j2 < grid_points; ++j2)
      sup = std::max(sup, std::abs(row[static_cast<std::size_t>(j2)]));
  }
  return sup;
}

} // namespace

std::vector<double> derivative_partial_sup(const SpectralField& u, const Mode& mu,
                                           const std::vector<int>& K_list,
                                           int oversample) {
  const int order = mu[0] + (u.lattice().dim == 2 ? mu[1] : 0);
  if (mu[0] < 0 || mu[1] < 0 || order > 4)
    throw std::invalid_argument("derivative_partial_sup: |mu| must be between 0 and 4");
  if (K_list.empty())
    throw std::invalid_argument("derivative_partial_sup: empty cutoff list");

  int K_max = 0;
  for (int K : K_list) {
    if (K < 1 || K > u.lattice().cutoff)
      throw std::invalid_argument("derivative_partial_sup: cutoff outside field lattice");
    K_max = std::max(K_max, K);
  }
  const int grid_points = oversample * (2 * K_max + 1);

  std::vector<double> sups;
  sups.reserve(K_list.size());
  for (int K : K_list) {
    const SpectralField trunc = u.truncated(K);
    if (u.lattice().dim == 1)
      sups.push_back(sup_partial_sum_1d(trunc, mu[0], grid_points));
    else
      sups.push_back(sup_partial_sum_2d(trunc, mu, grid_points));
  }
  return sups;
}

SpectralField threshold_witness(const Lattice& lat, int deriv_order) {
  SpectralField out(lat);
  const double a = static_cast<double>(deriv_order + lat.dim);
  for (std::size_t i = 0; i < lat.mode_count(); ++i) {
    const double m = lat.modulus_at(i);
    out.coeffs()[i] = std::pow(m, -a) * (1.0 + std::log(m));
  }
  return out;
}

SpectralField above_threshold_field(const Lattice& lat, int deriv_order, double margin) {
  SpectralField out(lat);
  const double a = static_cast<double>(deriv_order + lat.dim) + margin;
  for (std::size_t i = 0; i < lat.mode_count(); ++i)
    out.coeffs()[i] = std::pow(lat.modulus_at(i), -a);
  return out;
}

} // namespace sobscale
