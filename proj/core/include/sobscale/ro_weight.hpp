#pragma once

#include <optional>
#include <string>
#include <vector>

namespace sobscale {

enum class WeightFamily { Power, PowerLog, OscPower, Represented };
enum class IndexMode { Analytic, Estimated };

/// Grid used by the index estimator: log-ratio slopes over windows [t, lambda*t]
/// with t on a geometric grid. Small windows read off the local slope of
/// ln(phi) in ln(t); the extremes of that slope over a wide, far-out t range
/// estimate the lower/upper growth indices.
struct IndexGridSpec {
  std::vector<double> lambdas{2.0, 4.0, 8.0};
  double t_min = 1e10;
  double t_max = 1e14;
  int t_count = 400;
};

struct MatuszewskaIndices {
  double sigma0 = 0.0;
  double sigma1 = 0.0;
  IndexMode method = IndexMode::Analytic;
  std::optional<IndexGridSpec> grid;  // present for estimated indices
};

/// Result of the finite-window membership scan. `c_estimate` is the observed
/// sup of max(ratio, 1/ratio) over the grids; `c_safe` adds a 5% margin and is
/// what downstream property checks should compare fresh samples against.
struct RoMembership {
  double c_estimate = 1.0;
  double c_safe = 1.0;
  bool violated = false;
  /// c observed at T_max/8, T_max/4, T_max/2, T_max.
  std::vector<double> c_doubling;
};

struct MembershipGridSpec {
  double a = 2.0;       // lambda range [1, a]
  double t_max = 1e6;   // geometric t grid [1, t_max]
  int t_count = 512;
  int lambda_count = 17;
  double growth_threshold = 1.5;  // per-doubling growth that flags a violation
};

/// A positive weight function on [1, oo) from one of four families:
///   power:      t^s
///   powerlog:   t^s * ln(e+t)^r
///   oscpower:   t^s * exp(eps * sin(ln t))          (log-periodic oscillation)
///   represented: exp(beta(t) + int_1^t gamma(tau)/tau dtau), with beta and
///                gamma sampled on a geometric grid and piecewise linear in
///                ln t, so the integral term is evaluated exactly.
///
/// Weights are immutable values; every operation is pure.
class RoWeight {
public:
  static RoWeight power(double s);
  static RoWeight power_log(double s, double r);
  static RoWeight osc_power(double s, double eps);
  /// beta and gamma are samples at ln t = i * log_t_max/(n-1), i = 0..n-1.
  /// Beyond the grid both are extended by their final value.
  static RoWeight represented(std::vector<double> beta, std::vector<double> gamma,
                              double log_t_max);

  /// Weight value at t; domain is t >= 1.
  double operator()(double t) const;

  WeightFamily family() const { return family_; }
  double power_exponent() const { return s_; }
  double log_exponent() const { return r_; }
  double oscillation() const { return eps_; }

  bool has_analytic_indices() const { return family_ != WeightFamily::Represented; }

  /// Family-level indices: power and powerlog have order s; oscpower's local
  /// log-slope sweeps [s-eps, s+eps] and those extremes are its declared
  /// indices. Throws for represented weights.
  MatuszewskaIndices analytic_indices() const;

  /// The weight t -> t^s * phi(t); family-preserving.
  RoWeight shifted(double s) const;

  std::optional<std::pair<double, double>> cached_indices() const { return cached_; }

  /// Stable one-line description, used in report case digests.
  std::string describe() const;

private:
  RoWeight() = default;

  WeightFamily family_ = WeightFamily::Power;
  double s_ = 0.0;    // power exponent (power, powerlog, oscpower)
  double r_ = 0.0;    // log exponent (powerlog)
  double eps_ = 0.0;  // oscillation amplitude (oscpower)

  // represented family
  std::vector<double> beta_;
  std::vector<double> gamma_;
  std::vector<double> gamma_integral_;  // cumulative, exact for pw-linear gamma
  double log_t_max_ = 0.0;

  std::optional<std::pair<double, double>> cached_;
};

/// phi(t); throws std::domain_error for t < 1.
double evaluate(const RoWeight& phi, double t);

/// Scan phi(lambda*t)/phi(t) over explicit grids. Preconditions: grids
/// nonempty, lambda_grid within [1, a]. A weight is flagged as violating the
/// two-sided ratio bound when the observed constant keeps growing by at least
/// `growth_threshold` across three consecutive doublings of the t range.
RoMembership check_ro_membership(const RoWeight& phi, double a,
                                 const std::vector<double>& t_grid,
                                 const std::vector<double>& lambda_grid,
                                 double growth_threshold = 1.5);

/// Same scan on default geometric/linear grids.
RoMembership check_ro_membership(const RoWeight& phi,
                                 const MembershipGridSpec& spec = {});

/// Analytic or estimated growth indices. Estimated mode extremizes
/// ln(phi(lambda t)/phi(t)) / ln(lambda) over the grid windows.
MatuszewskaIndices indices(const RoWeight& phi, IndexMode mode,
                           const IndexGridSpec& spec = {});

/// t -> t^s * phi(t).
RoWeight shift(const RoWeight& phi, double s);

std::vector<double> geometric_grid(double lo, double hi, int count);

} // namespace sobscale
