#include "sobscale/embedding.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "sobscale/gauss.hpp"

namespace sobscale {

namespace {

std::optional<std::pair<double, double>> index_pair(const RoWeight& w) {
  if (w.cached_indices()) return w.cached_indices();
  return std::nullopt;
}

double grid_sup(const RoWeight& phi, const RoWeight& phi1,
                const std::vector<double>& grid, double cap) {
  double sup = 0.0;
  for (double t : grid) {
    if (t > cap) break;
    sup = std::max(sup, phi(t) / phi1(t));
  }
  return sup;
}

} // namespace

double embedding_constant(const RoWeight& phi, const RoWeight& phi1,
                          const std::vector<double>& grid) {
  if (grid.empty()) throw std::invalid_argument("embedding_constant: empty grid");
  double sup = 0.0;
  for (double t : grid) sup = std::max(sup, phi(t) / phi1(t));
  return sup;
}

EmbeddingResult embedding_bounded(const RoWeight& phi, const RoWeight& phi1,
                                  const EmbeddingGridSpec& spec) {
  const auto grid = geometric_grid(1.0, spec.t_max, spec.t_count);
  EmbeddingResult result;
  result.constant = grid_sup(phi, phi1, grid, spec.t_max);

  const auto i0 = index_pair(phi);
  const auto i1 = index_pair(phi1);
  if (i0 && i1) {
    if (i0->second < i1->first) {
      result.embeds = true;
      result.by_indices = true;
      return result;
    }
    if (i0->first > i1->second) {
      result.embeds = false;
      result.by_indices = true;
      return result;
    }
  }

  // sup restricted to t <= t_max / 8, /4, /2, /1
  double sups[4];
  for (int d = 0; d < 4; ++d)
    sups[d] = grid_sup(phi, phi1, grid, spec.t_max / std::pow(2.0, 3 - d));
  int growing = 0;
  for (int d = 1; d < 4; ++d)
    if (sups[d] >= spec.growth_threshold * sups[d - 1]) ++growing;
  result.embeds = (growing < 3);
  return result;
}

bool embedding_compact(const RoWeight& phi, const RoWeight& phi1,
                       const EmbeddingGridSpec& spec) {
  const auto i0 = index_pair(phi);
  const auto i1 = index_pair(phi1);
  if (i0 && i1) {
    if (i0->second < i1->first) return true;
    if (i0->first > i1->second) return false;
  }
  if (!embedding_bounded(phi, phi1, spec).embeds) return false;

  // tail decay: ratio non-increasing on [10, t_max] and decayed to <= 1/2 of
  // its value at the start of the tail
  const auto grid = geometric_grid(10.0, spec.t_max, spec.t_count);
  double prev = phi(grid.front()) / phi1(grid.front());
  const double head = prev;
  double last = prev;
  for (double t : grid) {
    const double r = phi(t) / phi1(t);
    if (r > prev * (1.0 + 1e-9)) return false;
    prev = r;
    last = r;
  }
  return last <= 0.5 * head;
}

namespace {

/// Partial integrals of t^p phi^{-2}(t) per decade [10^j, 10^{j+1}], computed
/// in u = ln t with two Gauss-Legendre panels per decade.
std::vector<double> decade_increments(const RoWeight& phi, double p, int decades) {
  const double L = std::log(10.0);
  std::vector<double> inc;
  inc.reserve(static_cast<std::size_t>(decades));
  for (int j = 0; j < decades; ++j) {
    double sum = 0.0;
    for (int half = 0; half < 2; ++half) {
      const double a = L * (j + 0.5 * half);
      const double b = L * (j + 0.5 * (half + 1));
      const auto rule = gauss_legendre(20, a, b);
      sum += rule.integrate([&](double u) {
        const double t = std::exp(u);
        const double w = phi(t);
        return std::exp((p + 1.0) * u) / (w * w);
      });
    }
    inc.push_back(sum);
  }
  return inc;
}

} // namespace

CkCriterionResult weighted_integral_criterion(const RoWeight& phi, double p) {
  CkCriterionResult res;
  constexpr int kDecades = 8;  // partial integrals up to t = 1e8
  res.decade_increments = decade_increments(phi, p, kDecades);
  double partial = 0.0;
  for (double d : res.decade_increments) partial += d;

  const auto idx = phi.cached_indices();
  if (idx) {
    const double conv_margin = p + 1.0 - 2.0 * idx->first;   // uses sigma0
    const double div_margin = p + 1.0 - 2.0 * idx->second;   // uses sigma1
    if (conv_margin < 0.0) {
      res.outcome = IntegralOutcome::Convergent;
      res.holds = true;
      res.decided_by = "indices";
      const double t_end = 1e8;
      const double f_end = std::pow(t_end, p) / std::pow(phi(t_end), 2);
      res.integral_estimate = partial + f_end * t_end / (-conv_margin);
      return res;
    }
    if (div_margin > 0.0) {
      res.outcome = IntegralOutcome::Divergent;
      res.holds = false;
      res.decided_by = "indices";
      res.integral_estimate = std::numeric_limits<double>::infinity();
      return res;
    }
  }

  // exponent lies inside the index band (or no indices): observe the shape of
  // the per-decade increments over the last four decades
  res.decided_by = "observation";
  double min_ratio = std::numeric_limits<double>::infinity();
  double max_ratio = 0.0;
  for (int j = kDecades - 4; j < kDecades; ++j) {
    const double r = res.decade_increments[static_cast<std::size_t>(j)] /
                     res.decade_increments[static_cast<std::size_t>(j - 1)];
    min_ratio = std::min(min_ratio, r);
    max_ratio = std::max(max_ratio, r);
  }
  if (max_ratio <= 0.97) {
    res.outcome = IntegralOutcome::Convergent;
    res.holds = true;
    const double r = max_ratio;
    res.integral_estimate = partial + res.decade_increments.back() * r / (1.0 - r);
  } else if (min_ratio >= 0.97) {
    res.outcome = IntegralOutcome::Divergent;
    res.holds = false;
    res.integral_estimate = std::numeric_limits<double>::infinity();
  } else {
    res.outcome = IntegralOutcome::Indeterminate;
    res.holds = false;
    res.integral_estimate = partial;
  }
  return res;
}

CkCriterionResult ck_embedding_criterion(const RoWeight& phi, int k, int n) {
  if (k < 0) throw std::invalid_argument("ck_embedding_criterion: k must be >= 0");
  if (n != 1 && n != 2)
    throw std::invalid_argument("ck_embedding_criterion: n must be 1 or 2");
  return weighted_integral_criterion(phi, 2.0 * k + n - 1.0);
}

} // namespace sobscale
