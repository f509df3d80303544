#include "sobscale/interpolation.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace sobscale {

HilbertPairSpec::HilbertPairSpec(double lo, double hi) : s0(lo), s1(hi) {
  if (!(s0 < s1)) throw std::invalid_argument("HilbertPairSpec: need s0 < s1");
}

double HilbertPairSpec::generator_symbol(double modulus) const {
  return std::pow(modulus, s1 - s0);
}

InterpolationParameter InterpolationParameter::from_weight(const RoWeight& phi,
                                                           double s0, double s1) {
  if (!(s0 < s1)) throw std::invalid_argument("make_psi: need s0 < s1");
  double lo, hi;
  if (phi.has_analytic_indices()) {
    const auto idx = phi.analytic_indices();
    lo = idx.sigma0;
    hi = idx.sigma1;
  } else {
    const auto idx = indices(phi, IndexMode::Estimated);
    // estimated values carry grid error; demand clearance by the estimation
    // tolerance rather than bare inequality
    lo = idx.sigma0 - 0.05;
    hi = idx.sigma1 + 0.05;
  }
  if (!(s0 < lo) || !(hi < s1)) {
    std::ostringstream os;
    os << "make_psi: weight indices [" << lo << ", " << hi
       << "] must lie strictly inside (" << s0 << ", " << s1 << ")";
    throw std::invalid_argument(os.str());
  }
  InterpolationParameter p;
  p.source_ = phi;
  p.s0_ = s0;
  p.s1_ = s1;
  std::ostringstream os;
  os << "psi[" << phi.describe() << ";" << s0 << "," << s1 << "]";
  p.description_ = os.str();
  return p;
}

InterpolationParameter InterpolationParameter::closed_form(
    std::function<double(double)> psi, std::string description) {
  InterpolationParameter p;
  p.closed_ = std::move(psi);
  p.description_ = std::move(description);
  return p;
}

double InterpolationParameter::operator()(double t) const {
  if (!(t > 0.0))
    throw std::domain_error("InterpolationParameter: argument must be positive");
  if (closed_) return closed_(t);
  const RoWeight& phi = *source_;
  if (t < 1.0) return phi(1.0);
  const double gap = s1_ - s0_;
  return std::pow(t, -s0_ / gap) * phi(std::pow(t, 1.0 / gap));
}

InterpolationParameter make_psi(const RoWeight& phi, double s0, double s1) {
  return InterpolationParameter::from_weight(phi, s0, s1);
}

PseudoconcavityReport is_pseudoconcave(const InterpolationParameter& psi,
                                       double t_start, double t_max, int count,
                                       double slack) {
  PseudoconcavityReport report;
  report.pseudoconcave = true;
  const auto grid = geometric_grid(t_start, t_max, count);
  for (double t : grid) {
    const double a = psi(t);
    const double b = psi(2.0 * t);
    // near non-decreasing: b >= a / slack
    const double grow_violation = a / (b * slack);
    // psi(t)/t near non-increasing: b/(2t) <= slack * a/t
    const double shrink_violation = b / (2.0 * slack * a);
    report.witness_constant =
        std::max({report.witness_constant, grow_violation, shrink_violation});
    if (grow_violation > 1.0 || shrink_violation > 1.0) report.pseudoconcave = false;
  }
  return report;
}

double interp_norm(const SpectralField& u, const HilbertPairSpec& pair,
                   const InterpolationParameter& psi) {
  double acc = 0.0;
  const auto& c = u.coeffs();
  for (std::size_t i = 0; i < c.size(); ++i) {
    const double m = u.lattice().modulus_at(i);
    const double mul = std::pow(m, pair.s0) * psi(pair.generator_symbol(m));
    acc += mul * mul * std::norm(c[i]);
  }
  return std::sqrt(acc);
}

double verify_interp_identity(const SpectralField& u, const RoWeight& phi,
                              double s0, double s1) {
  const auto psi = make_psi(phi, s0, s1);
  const HilbertPairSpec pair(s0, s1);
  const double via_interp = interp_norm(u, pair, psi);
  const double direct = h_norm(u, phi);
  if (direct == 0.0) return std::abs(via_interp - direct);
  return std::abs(via_interp - direct) / direct;
}

double verify_direct_sum(const std::vector<SpectralField>& us,
                         const std::vector<HilbertPairSpec>& pairs,
                         const InterpolationParameter& psi) {
  if (us.size() != pairs.size())
    throw std::invalid_argument("verify_direct_sum: component count mismatch");
  // one fused pass over the concatenated coefficients
  double fused = 0.0;
  for (std::size_t comp = 0; comp < us.size(); ++comp) {
    const auto& u = us[comp];
    const auto& pair = pairs[comp];
    for (std::size_t i = 0; i < u.coeffs().size(); ++i) {
      const double m = u.lattice().modulus_at(i);
      const double mul = std::pow(m, pair.s0) * psi(pair.generator_symbol(m));
      fused += mul * mul * std::norm(u.coeffs()[i]);
    }
  }
  const double sum_norm = std::sqrt(fused);
  // component norms combined after the fact
  double parts = 0.0;
  for (std::size_t comp = 0; comp < us.size(); ++comp) {
    const double nc = interp_norm(us[comp], pairs[comp], psi);
    parts += nc * nc;
  }
  const double pythagoras = std::sqrt(parts);
  if (pythagoras == 0.0) return std::abs(sum_norm - pythagoras);
  return std::abs(sum_norm - pythagoras) / pythagoras;
}

} // namespace sobscale
