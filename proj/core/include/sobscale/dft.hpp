#pragma once

#include <complex>
#include <vector>

namespace sobscale {

/// Dense 1-D discrete Fourier engine for odd sizes M = 2K+1 with the
/// symmetric frequency set k = -K..K and spatial nodes x_j = 2*pi*j/M.
///
/// synthesis:  w(x_j)  = sum_k  c_k e^{+i k x_j}
/// analysis:   c_k     = (1/M) sum_j w(x_j) e^{-i k x_j}
///
/// The two maps are exact inverses of each other. Everything is done with
/// precomputed twiddle tables and fixed-order loops so results are
/// bit-reproducible regardless of build flags or thread counts.
class ModeTransform {
public:
  explicit ModeTransform(int cutoff);

  int cutoff() const { return cutoff_; }
  int size() const { return size_; }

  /// coeffs has size 2K+1 ordered k = -K..K; returns spatial samples j = 0..M-1.
  std::vector<std::complex<double>> synthesize(
      const std::vector<std::complex<double>>& coeffs) const;

  /// spatial samples j = 0..M-1 -> coefficients k = -K..K.
  std::vector<std::complex<double>> analyze(
      const std::vector<std::complex<double>>& samples) const;

  /// 2-D tensor versions; data is row-major over (k1 or j1) outer index.
  std::vector<std::complex<double>> synthesize2(
      const std::vector<std::complex<double>>& coeffs) const;
  std::vector<std::complex<double>> analyze2(
      const std::vector<std::complex<double>>& samples) const;

  /// e^{+i k x_j} with k = -K..K, j = 0..M-1.
  std::complex<double> twiddle(int k, int j) const {
    return forward_[(k + cutoff_) * size_ + j];
  }

private:
  int cutoff_;
  int size_;
  std::vector<std::complex<double>> forward_;  // e^{+ikx_j}, (2K+1) x M
};

} // namespace sobscale
