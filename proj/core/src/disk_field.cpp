#include "sobscale/disk_field.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include "sobscale/csvfmt.hpp"

namespace sobscale {

namespace {
constexpr double kTwoPi = 6.28318530717958647692;
}

DiskPolynomial DiskPolynomial::constant(std::complex<double> value) {
  DiskPolynomial p(0);
  p.add_term(0, 0, value);
  return p;
}

void DiskPolynomial::add_term(int k, int j, std::complex<double> c) {
  if (j < 0) throw std::invalid_argument("DiskPolynomial: extra power must be >= 0");
  cutoff_ = std::max(cutoff_, std::abs(k));
  terms_[{k, j}] += c;
}

std::complex<double> DiskPolynomial::coefficient(int k, int j) const {
  const auto it = terms_.find({k, j});
  return it == terms_.end() ? std::complex<double>(0.0) : it->second;
}

int DiskPolynomial::max_extra_power(int k) const {
  int jmax = -1;
  for (const auto& [key, c] : terms_)
    if (key.first == k && std::abs(c) > 0.0) jmax = std::max(jmax, key.second);
  return jmax;
}

std::complex<double> DiskPolynomial::eval_mode(int k, double r) const {
  std::complex<double> acc = 0.0;
  for (const auto& [key, c] : terms_) {
    if (key.first != k) continue;
    acc += c * std::pow(r, std::abs(k) + 2 * key.second);
  }
  return acc;
}

std::complex<double> DiskPolynomial::eval(double r, double theta) const {
  std::complex<double> acc = 0.0;
  for (const auto& [key, c] : terms_) {
    const int k = key.first;
    const double p = static_cast<double>(std::abs(k) + 2 * key.second);
    const std::complex<double> phase(std::cos(k * theta), std::sin(k * theta));
    acc += c * std::pow(r, p) * phase;
  }
  return acc;
}

DiskPolynomial DiskPolynomial::laplacian() const {
  // Lap( r^p e^{ik th} ) = (p^2 - k^2) r^{p-2} e^{ik th}; p = |k|+2j keeps the
  // result in the same family with j -> j-1, and the j = 0 terms drop out.
  DiskPolynomial out(cutoff_);
  for (const auto& [key, c] : terms_) {
    const auto [k, j] = key;
    if (j == 0) continue;
    const double p = static_cast<double>(std::abs(k) + 2 * j);
    const double factor = p * p - static_cast<double>(k) * k;
    out.add_term(k, j - 1, c * factor);
  }
  return out;
}

DiskPolynomial DiskPolynomial::negated() const {
  DiskPolynomial out = *this;
  for (auto& [key, c] : out.terms_) c = -c;
  return out;
}

BoundaryField DiskPolynomial::trace() const {
  BoundaryField g(cutoff_);
  for (const auto& [key, c] : terms_) g.set(key.first, g.at(key.first) + c);
  return g;
}

BoundaryField DiskPolynomial::radial_trace() const {
  BoundaryField g(cutoff_);
  for (const auto& [key, c] : terms_) {
    const double p = static_cast<double>(std::abs(key.first) + 2 * key.second);
    g.set(key.first, g.at(key.first) + c * p);
  }
  return g;
}

BoundaryField DiskPolynomial::laplacian_trace() const { return laplacian().trace(); }

BoundaryField DiskPolynomial::laplacian_radial_trace() const {
  return laplacian().radial_trace();
}

std::complex<double> DiskPolynomial::disk_inner(const DiskPolynomial& u,
                                                const DiskPolynomial& v) {
  // orthogonality in theta; exact radial moments: int_0^1 r^{a+b+1} dr
  std::complex<double> acc = 0.0;
  for (const auto& [ku, cu] : u.terms_)
    for (const auto& [kv, cv] : v.terms_) {
      if (ku.first != kv.first) continue;
      const int a = std::abs(ku.first) + 2 * ku.second;
      const int b = std::abs(kv.first) + 2 * kv.second;
      acc += cu * std::conj(cv) / static_cast<double>(a + b + 2);
    }
  return acc * kTwoPi;
}

double DiskPolynomial::l2_norm() const { return std::sqrt(disk_inner(*this, *this).real()); }

std::complex<double> DiskPolynomial::disk_mean_integral() const {
  return disk_inner(*this, DiskPolynomial::constant(1.0));
}

DiskPolynomial DiskPolynomial::without_mean() const {
  const double area = 3.14159265358979323846;
  const std::complex<double> mean = disk_mean_integral() / area;
  DiskPolynomial out = *this;
  out.add_term(0, 0, -mean);
  return out;
}

DiskPolynomial random_disk_polynomial(Rng& rng, int mode_cap, int power_cap,
                                      double decay) {
  DiskPolynomial p(mode_cap);
  for (int k = -mode_cap; k <= mode_cap; ++k) {
    const double scale = std::pow(1.0 + static_cast<double>(k) * k, -0.5 * decay);
    for (int j = 0; j <= power_cap; ++j) {
      const double jdamp = 1.0 / ((1.0 + j) * (1.0 + j));
      p.add_term(k, j, rng.gaussian_complex() * (scale * jdamp));
    }
  }
  return p;
}

DiskField::DiskField(int cutoff, QuadratureRule radial)
    : cutoff_(cutoff), radial_(std::move(radial)) {
  profiles_.assign(static_cast<std::size_t>(2 * cutoff_ + 1),
                   std::vector<std::complex<double>>(radial_.size(), 0.0));
  // barycentric weights for the radial nodes
  const auto& x = radial_.nodes;
  const std::size_t n = x.size();
  bary_weights_.assign(n, 1.0);
  for (std::size_t i = 0; i < n; ++i) {
    double w = 1.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      w *= (x[i] - x[j]);
      // rescale on the fly against under/overflow
      if (std::abs(w) > 1e280) w *= 1e-280;
      if (std::abs(w) < 1e-280 && w != 0.0) w *= 1e280;
    }
    bary_weights_[i] = 1.0 / w;
  }
  // normalize to tame the dynamic range; barycentric form is scale invariant
  double wmax = 0.0;
  for (double w : bary_weights_) wmax = std::max(wmax, std::abs(w));
  for (double& w : bary_weights_) w /= wmax;
}

std::complex<double> DiskField::eval_mode(int k, double r) const {
  const auto& x = radial_.nodes;
  const auto& f = profile(k);
  std::complex<double> num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double diff = r - x[i];
    if (std::abs(diff) < 1e-14) return f[i];
    const double w = bary_weights_[i] / diff;
    num += w * f[i];
    den += w;
  }
  return num / den;
}

std::complex<double> DiskField::eval(double r, double theta) const {
  std::complex<double> acc = 0.0;
  for (int k = -cutoff_; k <= cutoff_; ++k) {
    const std::complex<double> phase(std::cos(k * theta), std::sin(k * theta));
    acc += eval_mode(k, r) * phase;
  }
  return acc;
}

double DiskField::l2_norm() const {
  double acc = 0.0;
  for (int k = -cutoff_; k <= cutoff_; ++k) {
    const auto& f = profile(k);
    double mode = 0.0;
    for (std::size_t i = 0; i < radial_.size(); ++i)
      mode += radial_.weights[i] * std::norm(f[i]) * radial_.nodes[i];
    acc += mode;
  }
  return std::sqrt(kTwoPi * acc);
}

void DiskField::write_csv(std::ostream& os) const {
  os << "# disk," << cutoff_ << "," << radial_.size() << "\n";
  os << "k,r,re,im\n";
  for (int k = -cutoff_; k <= cutoff_; ++k) {
    const auto& f = profile(k);
    for (std::size_t i = 0; i < radial_.size(); ++i)
      os << format_int(k) << "," << format_double(radial_.nodes[i]) << ","
         << format_double(f[i].real()) << "," << format_double(f[i].imag()) << "\n";
  }
}

} // namespace sobscale
