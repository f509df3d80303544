#pragma once

#include <string>
#include <vector>

#include "sobscale/ro_weight.hpp"

namespace sobscale {

struct EmbeddingGridSpec {
  double t_max = 1e8;
  int t_count = 800;
  /// Per-doubling growth of the observed sup that, sustained three times,
  /// marks the ratio as unbounded. Kept close to 1 so that logarithmic
  /// growth is caught; a slow monotone approach to a finite sup stays well
  /// below it.
  double growth_threshold = 1.01;
};

struct EmbeddingResult {
  bool embeds = false;
  double constant = 0.0;     // observed sup of phi/phi1 over the grid
  bool by_indices = false;   // decided by the index shortcut
};

/// Is phi/phi1 bounded (i.e. does the phi1-space embed into the phi-space)?
/// Index shortcut first when both weights carry indices; otherwise the sup is
/// tracked across doublings of the grid range.
EmbeddingResult embedding_bounded(const RoWeight& phi, const RoWeight& phi1,
                                  const EmbeddingGridSpec& spec = {});

/// Sup of phi/phi1 over an explicit grid, no heuristics. With the grid set to
/// the realized lattice weights the reported constant is sharp for lattice
/// fields.
double embedding_constant(const RoWeight& phi, const RoWeight& phi1,
                          const std::vector<double>& grid);

/// Does phi/phi1 -> 0 at infinity (compact embedding)?
bool embedding_compact(const RoWeight& phi, const RoWeight& phi1,
                       const EmbeddingGridSpec& spec = {});

enum class IntegralOutcome { Convergent, Divergent, Indeterminate };

struct CkCriterionResult {
  IntegralOutcome outcome = IntegralOutcome::Indeterminate;
  bool holds = false;                 // outcome == Convergent
  double integral_estimate = 0.0;     // +inf when divergent
  std::string decided_by;             // "indices" or "observation"
  std::vector<double> decade_increments;
};

/// Convergence of  int_1^oo t^p phi^{-2}(t) dt  for p = 2k + n - 1 (continuity
/// of order-k derivatives). Decided by the index bounds when the exponent is
/// clear of the band [2*sigma0, 2*sigma1]; inside the band the per-decade
/// increments of the partial integrals are inspected, and a genuinely mixed
/// signal is reported as indeterminate rather than guessed.
CkCriterionResult ck_embedding_criterion(const RoWeight& phi, int k, int n);

/// Same integral with a caller-chosen exponent p (used by solution-regularity
/// predictions where p = 2k + n - 1 - 4q).
CkCriterionResult weighted_integral_criterion(const RoWeight& phi, double p);

} // namespace sobscale
