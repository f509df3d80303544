#pragma once

// Independent reference computations for the test suites. These deliberately
// avoid the code paths of the library under test: the quotient oracle solves
// the primal-dual block system by dense LU, and the radial oracle discretizes
// the mode ODE by finite differences.

#include <complex>
#include <vector>

#include "sobscale/bvp_model.hpp"
#include "sobscale/quotient.hpp"

namespace sobscale::testing {

/// Dense KKT solve of: minimize sum_k d_k |w_k|^2 subject to E w = target.
/// Assembles [2D  E^H; E  0] explicitly and factorizes it with partial-pivot
/// LU. Returns the minimal weighted norm.
double quotient_norm_kkt(const DomainMask& mask, const RoWeight& weight,
                         const std::vector<std::complex<double>>& target);

/// Second-order finite-difference solve of the Laplace-model radial mode
/// problem  u'' + u'/r - k^2 u / r^2 = rhs  on (0, 1) with regularity at the
/// origin and either a Dirichlet value or a Neumann slope at r = 1 (k != 0
/// for Neumann). Richardson extrapolation of the N and 2N grids gives a
/// fourth-order reference. Returns values at the interior nodes r_i = i/N,
/// i = 1..N.
std::vector<std::complex<double>> radial_mode_fd(
    int k, const RadialFunction& rhs, std::complex<double> boundary_value,
    bool neumann, int n_intervals);

} // namespace sobscale::testing
