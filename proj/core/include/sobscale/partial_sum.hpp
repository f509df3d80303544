#pragma once

#include <vector>

#include "sobscale/spectral_field.hpp"

namespace sobscale {

/// Sup over a dense spatial grid of the order-mu derivative of the Fourier
/// partial sum of u truncated to each cutoff in K_list. mu is a multi-index
/// (mu[1] ignored in dimension 1), |mu| <= 4. The grid has `oversample` times
/// the lattice resolution of the largest requested cutoff.
std::vector<double> derivative_partial_sup(const SpectralField& u, const Mode& mu,
                                           const std::vector<int>& K_list,
                                           int oversample = 4);

/// Field with coefficients exactly at the decay bordering continuity of the
/// order-d derivatives: <k>^{-(d+n)}, log-enhanced so the divergence of the
/// partial sums is visible between desk-scale cutoffs. All coefficients are
/// positive, so the sup of every partial sum sits at x = 0.
SpectralField threshold_witness(const Lattice& lat, int deriv_order);

/// Same shape but `margin` orders of extra decay; its derivative partial sums
/// converge and the sup sequence flattens out.
SpectralField above_threshold_field(const Lattice& lat, int deriv_order,
                                    double margin = 1.0);

} // namespace sobscale
