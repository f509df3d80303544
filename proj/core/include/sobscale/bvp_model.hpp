#pragma once

#include <complex>
#include <functional>
#include <string>
#include <vector>

#include "sobscale/boundary_field.hpp"
#include "sobscale/disk_field.hpp"
#include "sobscale/spectral_field.hpp"

namespace sobscale {

enum class ModelKind { TorusHelmholtz, DiskDirichlet, DiskNeumann, DiskBiharmonic };

struct FredholmData {
  int dim_kernel = 0;
  int dim_cokernel = 0;
  int index = 0;
  std::vector<DiskPolynomial> kernel_basis;    // solutions annihilated by (A, B)
  std::vector<DiskPolynomial> cokernel_basis;  // annihilated by the adjoint system
};

/// One of four fixed, mode-wise solvable model problems:
///   torus-helmholtz : A = 1 - Lap on the 2-torus, no boundary (2q = 2)
///   disk-dirichlet  : A = -Lap on the unit disk, B = trace        (2q = 2, m = 0)
///   disk-neumann    : A = -Lap on the unit disk, B = d/dn         (2q = 2, m = 1)
///   disk-biharmonic : A = Lap^2 on the unit disk, B = (trace, d/dn) (2q = 4)
///
/// The boundary systems {C_j}, {C+_j}, {B+_j} closing the integration-by-parts
/// identity on the disk are fixed per model:
///   dirichlet : C+ v = -dv/dn,       C u = du/dn,        B+ v = -v
///   neumann   : C+ v = v,            C u = u,            B+ v = dv/dn
///   biharmonic: C+ = (d(Lap v)/dn, -Lap v),  C = (d(Lap u)/dn, -Lap u),
///               B+ = (v, dv/dn)
/// so that ord B_j + ord C+_j = ord C_j + ord B+_j = 2q - 1 throughout.
class BvpModel {
public:
  static BvpModel torus_helmholtz();
  static BvpModel disk_dirichlet();
  static BvpModel disk_neumann();
  static BvpModel disk_biharmonic();
  static const std::vector<BvpModel>& all_models();
  static BvpModel by_name(const std::string& name);

  ModelKind kind() const { return kind_; }
  const std::string& name() const { return name_; }
  int q() const { return q_; }
  int order() const { return 2 * q_; }
  const std::vector<int>& boundary_orders() const { return boundary_orders_; }
  int max_boundary_order() const;
  bool has_boundary() const { return !boundary_orders_.empty(); }

  FredholmData fredholm_data() const;

  /// A applied to a mode polynomial (-Lap, Lap^2, or the Helmholtz symbol is
  /// handled separately for torus fields).
  DiskPolynomial apply_interior(const DiskPolynomial& u) const;
  /// B_j u for all boundary operators.
  std::vector<BoundaryField> apply_boundary(const DiskPolynomial& u) const;

  /// Adjoint-side operators entering the integration-by-parts identity.
  DiskPolynomial apply_adjoint_interior(const DiskPolynomial& v) const;
  std::vector<BoundaryField> apply_c_plus(const DiskPolynomial& v) const;
  std::vector<BoundaryField> apply_c(const DiskPolynomial& u) const;
  std::vector<BoundaryField> apply_b_plus(const DiskPolynomial& v) const;

private:
  BvpModel(ModelKind kind, std::string name, int q, std::vector<int> orders)
      : kind_(kind), name_(std::move(name)), q_(q), boundary_orders_(std::move(orders)) {}

  ModelKind kind_;
  std::string name_;
  int q_;
  std::vector<int> boundary_orders_;
};

struct ModeSolution {
  std::vector<std::complex<double>> profile;  // values at the requested radii
  bool solvable = true;
  std::complex<double> defect = 0.0;  // mode-wise compatibility defect
};

/// Radial data for one angular mode; null stands for zero volume data.
using RadialFunction = std::function<std::complex<double>(double)>;

/// Solves the model's radial mode problem
///   (Laplace)    -(u'' + u'/r - k^2 u / r^2) = f,  boundary value or slope at 1
///   (biharmonic) Lap^2 u = f,                      value and slope at 1
/// through the explicit mode Green kernel (regular at r = 0, vanishing trace)
/// plus the homogeneous corrections r^{|k|} and (biharmonic) r^{|k|+2}.
/// Quadrature is split at each target radius, so smooth data is integrated to
/// near machine precision. For the Neumann k = 0 mode the data must satisfy
/// g_0 + int_0^1 f r dr = 0; otherwise `solvable` is false and `defect`
/// carries the mismatch.
ModeSolution solve_mode(const BvpModel& model, int k, const RadialFunction& f,
                        const std::vector<std::complex<double>>& g,
                        const std::vector<double>& radii, int quadrature_points);

struct DiskSolveInput {
  int cutoff = 8;  // angular cutoff K
  /// f(k, r): per-mode volume data; empty function means f = 0.
  std::function<std::complex<double>(int, double)> f;
  std::vector<BoundaryField> g;  // one per boundary operator
};

struct DiskSolveResult {
  bool compatible = true;
  std::vector<std::complex<double>> defects;  // one entry per cokernel element
  DiskField u;
};

/// Assembles mode solutions on a 4K-point radial Gauss-Legendre grid. When the
/// model has a cokernel the compatibility defect is evaluated first and the
/// solve is refused if it exceeds `compatibility_tol` (relative to the data
/// size); when the model has a kernel the returned solution has zero kernel
/// component (zero disk mean for the Neumann model).
DiskSolveResult solve(const BvpModel& model, const DiskSolveInput& data,
                      double compatibility_tol = 1e-10);

/// Left side of the range condition, one value per cokernel basis element v:
/// (f, v)_disk + sum_j (g_j, C+_j v)_circle. Empty for models with trivial
/// cokernel.
std::vector<std::complex<double>> compatibility_defect(const BvpModel& model,
                                                       const DiskSolveInput& data);

/// Exact defect for closed-form data.
std::vector<std::complex<double>> compatibility_defect(
    const BvpModel& model, const DiskPolynomial& f,
    const std::vector<BoundaryField>& g);

/// Projection off the kernel (subtracts the disk average for the Neumann
/// model, identity elsewhere).
DiskPolynomial kernel_projection(const BvpModel& model, const DiskPolynomial& u);

/// Projection of a data tuple onto the range, parallel to the cokernel
/// direction (v, 0, ..., 0): only the volume component changes.
std::pair<DiskPolynomial, std::vector<BoundaryField>> range_projection(
    const BvpModel& model, DiskPolynomial f, std::vector<BoundaryField> g);

/// Torus model: (1 - Lap) u = f has the exact mode solution f_k / <k>^2.
SpectralField solve_torus_helmholtz(const SpectralField& f);

/// | (Au,v) + sum (B_j u, C+_j v) - (u, A+ v) - sum (C_j u, B+_j v) | with the
/// disk inner products done by radial Gauss-Legendre quadrature (the boundary
/// pairings are exact mode sums). For the torus model the identity reduces to
/// self-adjointness of 1 - Lap, checked spectrally vs. grid quadrature.
double green_identity_residual(const BvpModel& model, const DiskPolynomial& u,
                               const DiskPolynomial& v, int quadrature_points = 64);

} // namespace sobscale
