#include "sobscale/boundary_field.hpp"

#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "sobscale/csvfmt.hpp"
#include "sobscale/lattice.hpp"

namespace sobscale {

bool BoundaryField::is_real_valued(double tol) const {
  for (int k = -cutoff_; k <= cutoff_; ++k)
    if (std::abs(at(k) - std::conj(at(-k))) > tol) return false;
  return true;
}

std::complex<double> BoundaryField::circle_inner(const BoundaryField& a,
                                                 const BoundaryField& b) {
  if (a.cutoff() != b.cutoff())
    throw std::invalid_argument("circle_inner: cutoff mismatch");
  std::complex<double> acc = 0.0;
  for (int k = -a.cutoff(); k <= a.cutoff(); ++k) acc += a.at(k) * std::conj(b.at(k));
  return acc * (2.0 * 3.14159265358979323846);
}

double gamma_norm(const BoundaryField& g, const RoWeight& phi) {
  double acc = 0.0;
  for (int k = -g.cutoff(); k <= g.cutoff(); ++k) {
    const double w = phi(smoothed_modulus({k, 0}, 1));
    acc += w * w * std::norm(g.at(k));
  }
  return std::sqrt(acc);
}

void write_csv(const BoundaryField& g, std::ostream& os) {
  os << "# circle," << g.cutoff() << "\n";
  os << "k,re,im\n";
  for (int k = -g.cutoff(); k <= g.cutoff(); ++k)
    os << format_int(k) << "," << format_double(g.at(k).real()) << ","
       << format_double(g.at(k).imag()) << "\n";
}

BoundaryField read_boundary_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line.rfind("# circle,", 0) != 0)
    throw std::runtime_error("boundary csv: missing header");
  const int cutoff = std::stoi(line.substr(9));
  if (!std::getline(is, line)) throw std::runtime_error("boundary csv: missing columns");
  BoundaryField g(cutoff);
  std::size_t rows = 0;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string cell;
    std::getline(row, cell, ',');
    const int k = std::stoi(cell);
    std::getline(row, cell, ',');
    const double re = std::stod(cell);
    std::getline(row, cell, ',');
    const double im = std::stod(cell);
    g.set(k, {re, im});
    ++rows;
  }
  if (rows != g.size()) throw std::runtime_error("boundary csv: row count mismatch");
  return g;
}

} // namespace sobscale
