#include "sobscale/dft.hpp"

#include <cmath>
#include <stdexcept>

namespace sobscale {

ModeTransform::ModeTransform(int cutoff) : cutoff_(cutoff), size_(2 * cutoff + 1) {
  if (cutoff < 1) throw std::invalid_argument("ModeTransform: cutoff must be >= 1");
  const double step = 2.0 * 3.14159265358979323846 / static_cast<double>(size_);
  forward_.resize(static_cast<std::size_t>(size_) * size_);
  for (int k = -cutoff_; k <= cutoff_; ++k)
    for (int j = 0; j < size_; ++j) {
      const double phase = step * k * j;
      forward_[(k + cutoff_) * size_ + j] = {std::cos(phase), std::sin(phase)};
    }
}

std::vector<std::complex<double>> ModeTransform::synthesize(
    const std::vector<std::complex<double>>& coeffs) const {
  if (static_cast<int>(coeffs.size()) != size_)
    throw std::invalid_argument("ModeTransform::synthesize: coefficient size mismatch");
  std::vector<std::complex<double>> out(size_);
  for (int j = 0; j < size_; ++j) {
    std::complex<double> acc = 0.0;
    for (int m = 0; m < size_; ++m) acc += coeffs[m] * forward_[m * size_ + j];
    out[j] = acc;
  }
  return out;
}

std::vector<std::complex<double>> ModeTransform::analyze(
    const std::vector<std::complex<double>>& samples) const {
  if (static_cast<int>(samples.size()) != size_)
    throw std::invalid_argument("ModeTransform::analyze: sample size mismatch");
  std::vector<std::complex<double>> out(size_);
  const double scale = 1.0 / static_cast<double>(size_);
  for (int m = 0; m < size_; ++m) {
    std::complex<double> acc = 0.0;
    for (int j = 0; j < size_; ++j) acc += samples[j] * std::conj(forward_[m * size_ + j]);
    out[m] = acc * scale;
  }
  return out;
}

std::vector<std::complex<double>> ModeTransform::synthesize2(
    const std::vector<std::complex<double>>& coeffs) const {
  const std::size_t M = static_cast<std::size_t>(size_);
  if (coeffs.size() != M * M)
    throw std::invalid_argument("ModeTransform::synthesize2: coefficient size mismatch");
  // pass 1: transform the inner (second) index for every outer row
  std::vector<std::complex<double>> tmp(M * M), out(M * M);
  for (std::size_t r = 0; r < M; ++r)
    for (std::size_t j = 0; j < M; ++j) {
      std::complex<double> acc = 0.0;
      for (std::size_t m = 0; m < M; ++m)
        acc += coeffs[r * M + m] * forward_[m * M + j];
      tmp[r * M + j] = acc;
    }
  // pass 2: transform the outer index
  for (std::size_t j1 = 0; j1 < M; ++j1)
    for (std::size_t j2 = 0; j2 < M; ++j2) {
      std::complex<double> acc = 0.0;
      for (std::size_t m = 0; m < M; ++m)
        acc += tmp[m * M + j2] * forward_[m * M + j1];
      out[j1 * M + j2] = acc;
    }
  return out;
}

std::vector<std::complex<double>> ModeTransform::analyze2(
    const std::vector<std::complex<double>>& samples) const {
  const std::size_t M = static_cast<std::size_t>(size_);
  if (samples.size() != M * M)
    throw std::invalid_argument("ModeTransform::analyze2: sample size mismatch");
  const double scale = 1.0 / static_cast<double>(size_);
  std::vector<std::complex<double>> tmp(M * M), out(M * M);
  for (std::size_t j1 = 0; j1 < M; ++j1)
    for (std::size_t m = 0; m < M; ++m) {
      std::complex<double> acc = 0.0;
      for (std::size_t j2 = 0; j2 < M; ++j2)
        acc += samples[j1 * M + j2] * std::conj(forward_[m * M + j2]);
      tmp[j1 * M + m] = acc * scale;
    }
  for (std::size_t m1 = 0; m1 < M; ++m1)
    for (std::size_t m2 = 0; m2 < M; ++m2) {
      std::complex<double> acc = 0.0;
      for (std::size_t j1 = 0; j1 < M; ++j1)
        acc += tmp[j1 * M + m2] * std::conj(forward_[m1 * M + j1]);
      out[m1 * M + m2] = acc * scale;
    }
  return out;
}

} // namespace sobscale
