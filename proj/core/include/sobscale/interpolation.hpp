#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "sobscale/ro_weight.hpp"
#include "sobscale/spectral_field.hpp"

namespace sobscale {

/// An ordered Sobolev pair [H^{(s0)}, H^{(s1)}], s0 < s1. Its generating
/// operator is realized only in diagonal form: the Fourier multiplier
/// <k>^{s1-s0}, which maps the s1-space isometrically onto the s0-space.
struct HilbertPairSpec {
  double s0;
  double s1;

  HilbertPairSpec(double lo, double hi);
  double generator_symbol(double modulus) const;
};

/// A positive function on (0, oo), bounded on compacts and separated from
/// zero near infinity. Either derived from a weight via
///   psi(t) = t^{-s0/(s1-s0)} * phi(t^{1/(s1-s0)})   for t >= 1,
///   psi(t) = phi(1)                                  for 0 < t < 1,
/// or given in closed form.
class InterpolationParameter {
public:
  /// Derived parameter; requires s0 < sigma0(phi) <= sigma1(phi) < s1
  /// (analytic indices when the family has them, estimated otherwise).
  static InterpolationParameter from_weight(const RoWeight& phi, double s0, double s1);

  static InterpolationParameter closed_form(std::function<double(double)> psi,
                                            std::string description);

  double operator()(double t) const;

  const std::optional<RoWeight>& source() const { return source_; }
  double s0() const { return s0_; }
  double s1() const { return s1_; }
  const std::string& describe() const { return description_; }

private:
  InterpolationParameter() = default;

  std::optional<RoWeight> source_;
  double s0_ = 0.0, s1_ = 1.0;
  std::function<double(double)> closed_;
  std::string description_;
};

InterpolationParameter make_psi(const RoWeight& phi, double s0, double s1);

struct PseudoconcavityReport {
  bool pseudoconcave = false;
  /// Worst factor by which the doubling conditions were stressed; 1 means
  /// clean monotonicity both ways.
  double witness_constant = 1.0;
};

/// Peetre-style check on a log grid for t >= t_start: psi nearly
/// non-decreasing and psi(t)/t nearly non-increasing, each up to the slack
/// factor: psi(2t) >= psi(t)/slack and psi(2t) <= 2*slack*psi(t).
PseudoconcavityReport is_pseudoconcave(const InterpolationParameter& psi,
                                       double t_start = 1.0, double t_max = 1e8,
                                       int count = 600, double slack = 1.1);

/// Norm of u in the interpolation space of the pair with parameter psi:
/// (sum_k <k>^{2 s0} psi^2(<k>^{s1-s0}) |c_k|^2)^{1/2}.
double interp_norm(const SpectralField& u, const HilbertPairSpec& pair,
                   const InterpolationParameter& psi);

/// Relative gap between interp_norm with psi = make_psi(phi, s0, s1) and the
/// direct weighted norm of u. Algebraically zero; the return is the
/// floating-point defect. For the zero field the absolute gap (zero) is
/// returned.
double verify_interp_identity(const SpectralField& u, const RoWeight& phi,
                              double s0, double s1);

/// Relative gap between the interpolation norm of the direct sum of the
/// components and the Pythagorean combination of their interpolation norms.
double verify_direct_sum(const std::vector<SpectralField>& us,
                         const std::vector<HilbertPairSpec>& pairs,
                         const InterpolationParameter& psi);

} // namespace sobscale
