#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>

#include "sobscale/bvp_model.hpp"
#include "sobscale/embedding.hpp"
#include "sobscale/quotient.hpp"

namespace sobscale {

/// A smooth disk function given as the restriction of a band-limited torus
/// field (the "generator"). Interior operators act as Fourier multipliers on
/// the generator and the circle traces have exact Bessel-series expansions,
/// so the whole data tuple is available in closed form. Because the generator
/// itself is a feasible extension at every lattice cutoff >= its own, the
/// quotient norms of these samples are resolution-converged at desk scale.
class TrigDiskSample {
public:
  explicit TrigDiskSample(SpectralField generator);

  static TrigDiskSample random(const BvpModel& model, Rng& rng, int mode_cap,
                               double decay);

  const SpectralField& generator() const { return gen_; }

  std::complex<double> eval(double r, double theta) const;

  /// Generator of A u: multiplier |k|^2 (q = 1, A = -Lap) or |k|^4 (q = 2).
  SpectralField interior_generator(int q) const;

  /// B_j u as circle Fourier series (Bessel expansion, cutoff 40).
  std::vector<BoundaryField> boundary_data(const BvpModel& model) const;

  std::complex<double> disk_mean_integral() const;
  TrigDiskSample without_mean() const;

private:
  SpectralField gen_;
};

/// Caches quotient solvers for the disk-in-torus geometry, one per weight, so
/// whole sample sweeps reuse a single factorization. The disk has radius 1 and
/// sits at the center of the 2*pi-periodic 2-torus. Band-limited targets are
/// evaluated through a cached phase matrix.
class DiskNormContext {
public:
  explicit DiskNormContext(int lattice_cutoff, SolverOptions options = direct_options());

  static SolverOptions direct_options();

  int cutoff() const { return lattice_.cutoff; }
  const DomainMask& mask() const { return mask_; }

  /// Quotient norm over extensions of u to the torus, weight phi(<k>).
  double omega_norm(const DiskPolynomial& u, const RoWeight& weight);
  /// Same with the flat weight: the discrete L2(domain) realization.
  double omega_norm_l2(const DiskPolynomial& u);
  QuotientResult omega_solve(const DiskPolynomial& u, const RoWeight& weight);

  /// Quotient norms of restrictions of band-limited torus fields.
  double omega_norm_trig(const SpectralField& generator, const RoWeight& weight);
  QuotientResult omega_solve_trig(const SpectralField& generator,
                                  const RoWeight& weight);

private:
  QuotientSolver& solver_for(const RoWeight& weight);
  std::vector<std::complex<double>> target_of(const DiskPolynomial& u) const;
  std::vector<std::complex<double>> target_of_trig(const SpectralField& gen);

  Lattice lattice_;
  DomainMask mask_;
  SolverOptions options_;
  std::vector<std::array<double, 2>> polar_;  // (r, theta) of inside points
  std::map<std::string, std::unique_ptr<QuotientSolver>> solvers_;
  // phase matrix e^{i k.x_j} per generator cutoff: inside points x modes
  std::map<int, std::vector<std::complex<double>>> phase_cache_;
};

/// Lower/upper index bounds of a weight: analytic for the closed-form
/// families, estimated (with the estimator tolerance folded in) otherwise.
std::pair<double, double> weight_index_bounds(const RoWeight& phi);

/// sqrt( ||f||^2_{H^phi(domain)} + sum_j ||g_j||^2 with weight
/// phi * rho^{2q - m_j - 1/2} ) -- the natural norm of the data tuple.
double data_tuple_norm(const BvpModel& model, const DiskPolynomial& f,
                       const std::vector<BoundaryField>& g, const RoWeight& phi,
                       DiskNormContext& ctx);

/// Trace-shift surrogate for the domain norm of a harmonic function with
/// boundary series g: sqrt( sum_k eta^2(<k>) <k>^{-1} |g_k|^2 / (4 pi) ).
/// The constant is fixed by matching the discrete L2 realization on high
/// modes; the surrogate is a cross-check, not ground truth.
double harmonic_surrogate_norm(const BoundaryField& g, const RoWeight& eta);

struct AprioriResult {
  double ratio = 0.0;       // ||u||_{phi rho^{2q}} / (tuple + L2)
  double numerator = 0.0;   // quotient-route numerator
  double tuple = 0.0;
  double l2 = 0.0;
  /// Present for harmonic samples: the same ratio with the domain norms
  /// replaced by the boundary surrogate.
  std::optional<double> surrogate_ratio;
};

/// Requires sigma0(phi) > -1/2 and u != 0.
AprioriResult apriori_ratio(const BvpModel& model, const DiskPolynomial& u,
                            const RoWeight& phi, DiskNormContext& ctx);
AprioriResult apriori_ratio(const BvpModel& model, const TrigDiskSample& u,
                            const RoWeight& phi, DiskNormContext& ctx);

/// Torus model analogue; the interior identity makes it exact.
double torus_apriori_ratio(const SpectralField& u, const RoWeight& phi);

struct IsoBounds {
  double lower = 0.0;
  double upper = 0.0;
};

/// Extremes of ||(A,B)u||_tuple / ||u||_{phi rho^{2q}} over seeded random
/// samples with the kernel component projected out. Sample mode content is
/// capped independently of the lattice cutoff so the same functions are
/// measured at every resolution.
IsoBounds isomorphism_condition(const BvpModel& model, const RoWeight& phi,
                                int n_samples, std::uint64_t seed,
                                DiskNormContext& ctx);

IsoBounds torus_isomorphism_condition(const RoWeight& phi, int lattice_cutoff,
                                      int n_samples, std::uint64_t seed);

/// | ||(1-Lap)u||_phi - ||u||_{phi rho^2} | / ||u||_{phi rho^2}; the multiplier
/// is exactly <k>^2 so the gap is floating-point only. Absolute gap for u = 0.
double regularity_shift_exact(const SpectralField& u, const RoWeight& phi);

/// Convergence of the solution-regularity integral with exponent
/// 2k + n - 1 - 4q (continuity of order-k derivatives of solutions whose data
/// has phi-regularity).
CkCriterionResult ck_prediction(const RoWeight& phi, int k, int q, int n);

struct ClassicalPrediction {
  bool classical = false;
  bool indeterminate = false;
  CkCriterionResult interior;  // exponent n-1 with phi1
  CkCriterionResult boundary;  // exponent 2m+n-1-4q with phi2
};

/// Requires sigma0(phi1) > -1/2 and sigma0(phi2) > -1/2; predicts a classical
/// solution (C^{2q} inside, C^m up to the boundary) when both integrals
/// converge.
ClassicalPrediction classical_prediction(const BvpModel& model, const RoWeight& phi1,
                                         const RoWeight& phi2, int n = 2);

/// Quadrature-vs-spectral self-adjointness defect of 1 - Lap on the torus.
double green_identity_residual_torus(const SpectralField& u, const SpectralField& v);

/// Seeded sample for the a priori / isomorphism sweeps. Mode content capped at
/// `mode_cap`, radial powers at |k|+2*power_cap, coefficients decaying like
/// <k>^{-decay}. The kernel component is removed for models with a kernel.
DiskPolynomial random_bvp_sample(const BvpModel& model, Rng& rng, int mode_cap = 6,
                                 int power_cap = 3, double decay = 2.5);

/// Coefficient decay that keeps the top-order norm of a sample dominated by
/// resolved scales: 2q + sigma1(phi) + 1.5.
double sample_decay_for(const BvpModel& model, const RoWeight& phi);

} // namespace sobscale
