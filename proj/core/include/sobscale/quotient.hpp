#pragma once

#include <complex>
#include <iosfwd>
#include <memory>
#include <vector>

#include "sobscale/lattice.hpp"
#include "sobscale/ro_weight.hpp"
#include "sobscale/spectral_field.hpp"

namespace sobscale {

/// Marks the grid points of a lattice-resolution spatial grid that lie in the
/// domain. The grid has 2K+1 points per dimension at x_j = 2*pi*j/(2K+1); in
/// two dimensions points are indexed row-major (j1, j2). The reference
/// geometry is a disk of radius 1 centered at (pi, pi) inside the 2*pi-torus
/// (interval of half-width 1 around pi in one dimension), so periodization
/// effects stay separated from the domain.
class DomainMask {
public:
  static DomainMask disk(const Lattice& lat, double radius = 1.0);
  static DomainMask interval(const Lattice& lat, double half_width = 1.0);
  static DomainMask from_flags(const Lattice& lat, std::vector<bool> inside);

  const Lattice& lattice() const { return lattice_; }
  const std::vector<bool>& flags() const { return inside_; }
  const std::vector<std::size_t>& inside_indices() const { return inside_idx_; }
  std::size_t inside_count() const { return inside_idx_.size(); }

  /// Spatial coordinates of grid point `flat` (x2 = 0 in one dimension).
  std::array<double, 2> point(std::size_t flat) const;

  void write_csv(std::ostream& os) const;
  static DomainMask read_csv(std::istream& is);

private:
  DomainMask() = default;
  void finalize();

  Lattice lattice_;
  std::vector<bool> inside_;
  std::vector<std::size_t> inside_idx_;
};

struct SolverOptions {
  enum class Method { Auto, ConjugateGradient, Direct };
  Method method = Method::Auto;
  /// Max-norm constraint residual, relative to the max target value.
  double tolerance = 1e-10;
  /// 0 means 2 * (number of constraints) + 10.
  int max_iterations = 0;
  /// Relative diagonal regularization for the direct factorization.
  double ridge = 1e-13;
};

struct QuotientResult {
  double value = 0.0;
  SpectralField extension;
  bool converged = false;
  double residual = 0.0;  // achieved relative constraint residual (max norm)
  int iterations = 0;
};

struct QuotientProblem {
  DomainMask mask;
  std::vector<std::complex<double>> target;  // values at mask.inside_indices()
  RoWeight weight;
  SolverOptions options;
};

/// Minimizes the weighted coefficient norm over all lattice fields that match
/// the target at the inside grid points. The dual system is the kernel matrix
/// G = E D^{-1} E^* (E = evaluation at inside points, D = diag phi^2(<k>));
/// it is assembled once from a single transform of phi^{-2} and solved either
/// by conjugate gradients or by a Cholesky factorization with a small ridge
/// plus iterative refinement. The reported value is the norm of the returned
/// extension, so it is meaningful even when the solve did not converge.
class QuotientSolver {
public:
  QuotientSolver(DomainMask mask, RoWeight weight, SolverOptions options = {});

  QuotientResult solve(const std::vector<std::complex<double>>& target) const;

  const DomainMask& mask() const { return mask_; }
  const RoWeight& weight() const { return weight_; }

private:
  void ensure_factorization() const;
  std::vector<std::complex<double>> apply_kernel(
      const std::vector<std::complex<double>>& lambda) const;
  QuotientResult finish(const std::vector<std::complex<double>>& lambda,
                        const std::vector<std::complex<double>>& target, int iters,
                        bool converged, double residual) const;

  DomainMask mask_;
  RoWeight weight_;
  SolverOptions options_;
  std::vector<double> d_inv_;                       // phi^{-2}(<k>)
  std::vector<std::complex<double>> kernel_;        // kernel on the full grid
  std::vector<std::complex<double>> gram_;          // dense G, row-major
  mutable std::vector<std::complex<double>> chol_;  // lower factor, lazily built
};

QuotientResult quotient_norm(const QuotientProblem& p);

/// Inverse transform of w sampled at the inside points of the mask.
std::vector<std::complex<double>> restriction(const SpectralField& w,
                                              const DomainMask& mask);

/// Weighted norm of an explicit feasible extension; throws if w does not match
/// the target on the mask to within feasibility_tol (relative max norm).
double quotient_upper_bound(const std::vector<std::complex<double>>& target,
                            const RoWeight& phi, const SpectralField& w,
                            const DomainMask& mask, double feasibility_tol = 1e-8);

} // namespace sobscale
