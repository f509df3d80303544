#include "sobscale/spectral_field.hpp"

#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "sobscale/csvfmt.hpp"
#include "sobscale/rng.hpp"

namespace sobscale {

SpectralField::SpectralField(const Lattice& lat, std::vector<std::complex<double>> c)
    : lattice_(lat), coeffs_(std::move(c)) {
  if (coeffs_.size() != lattice_.mode_count())
    throw std::invalid_argument("SpectralField: coefficient count does not match lattice");
}

bool SpectralField::all_finite() const {
  for (const auto& c : coeffs_)
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) return false;
  return true;
}

bool SpectralField::is_real_valued(double tol) const {
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    const Mode k = lattice_.mode_at(i);
    const Mode neg{-k[0], -k[1]};
    const auto diff = coeffs_[i] - std::conj(coeffs_[lattice_.index(neg)]);
    if (std::abs(diff) > tol) return false;
  }
  return true;
}

SpectralField SpectralField::truncated(int new_cutoff) const {
  if (new_cutoff >= lattice_.cutoff) return *this;
  Lattice lat(lattice_.dim, new_cutoff);
  SpectralField out(lat);
  for (std::size_t i = 0; i < out.coeffs_.size(); ++i)
    out.coeffs_[i] = coeffs_[lattice_.index(lat.mode_at(i))];
  return out;
}

SpectralField SpectralField::multiplied(
    const std::function<double(double)>& multiplier) const {
  SpectralField out = *this;
  for (std::size_t i = 0; i < out.coeffs_.size(); ++i)
    out.coeffs_[i] *= multiplier(lattice_.modulus_at(i));
  return out;
}

double h_norm(const SpectralField& u, const RoWeight& phi) {
  double acc = 0.0;
  const auto& c = u.coeffs();
  for (std::size_t i = 0; i < c.size(); ++i) {
    const double w = phi(u.lattice().modulus_at(i));
    acc += w * w * std::norm(c[i]);
  }
  return std::sqrt(acc);
}

double sobolev_norm(const SpectralField& u, double s) {
  return h_norm(u, RoWeight::power(s));
}

SpectralField random_field(std::uint64_t seed, const RoWeight& decay, const Lattice& lat) {
  Rng rng(seed);
  SpectralField out(lat);
  for (std::size_t i = 0; i < lat.mode_count(); ++i)
    out.coeffs()[i] = rng.gaussian_complex() / decay(lat.modulus_at(i));
  return out;
}

SpectralField helmholtz_apply(const SpectralField& u) {
  return u.multiplied([](double m) { return m * m; });
}

void write_csv(const SpectralField& u, std::ostream& os) {
  os << "# lattice," << u.lattice().dim << "," << u.lattice().cutoff << "\n";
  os << "k1,k2,re,im\n";
  for (std::size_t i = 0; i < u.coeffs().size(); ++i) {
    const Mode k = u.lattice().mode_at(i);
    os << format_int(k[0]) << "," << format_int(k[1]) << ","
       << format_double(u.coeffs()[i].real()) << ","
       << format_double(u.coeffs()[i].imag()) << "\n";
  }
}

SpectralField read_field_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line.rfind("# lattice,", 0) != 0)
    throw std::runtime_error("field csv: missing lattice header");
  int dim = 0, cutoff = 0;
  {
    std::istringstream header(line.substr(10));
    char comma;
    header >> dim >> comma >> cutoff;
    if (!header) throw std::runtime_error("field csv: malformed lattice header");
  }
  if (!std::getline(is, line))
    throw std::runtime_error("field csv: missing column header");
  Lattice lat(dim, cutoff);
  SpectralField out(lat);
  std::size_t rows = 0;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string cell;
    int k1, k2;
    double re, im;
    std::getline(row, cell, ',');
    k1 = std::stoi(cell);
    std::getline(row, cell, ',');
    k2 = std::stoi(cell);
    std::getline(row, cell, ',');
    re = std::stod(cell);
    std::getline(row, cell, ',');
    im = std::stod(cell);
    out.set({k1, k2}, {re, im});
    ++rows;
  }
  if (rows != lat.mode_count())
    throw std::runtime_error("field csv: row count does not match lattice");
  return out;
}

} // namespace sobscale
