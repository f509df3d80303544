#include "sobscale/ro_weight.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace sobscale {

namespace {
constexpr double kE = 2.71828182845904523536;

double pw_linear(const std::vector<double>& samples, double du, double u) {
  // samples at u_i = i*du; constant extension beyond both ends.
  if (u <= 0.0) return samples.front();
  const double last = du * static_cast<double>(samples.size() - 1);
  if (u >= last) return samples.back();
  const double pos = u / du;
  const auto i = static_cast<std::size_t>(pos);
  const double frac = pos - static_cast<double>(i);
  return samples[i] * (1.0 - frac) + samples[i + 1] * frac;
}
} // namespace

RoWeight RoWeight::power(double s) {
  RoWeight w;
  w.family_ = WeightFamily::Power;
  w.s_ = s;
  w.cached_ = {{s, s}};
  return w;
}

RoWeight RoWeight::power_log(double s, double r) {
  RoWeight w;
  w.family_ = WeightFamily::PowerLog;
  w.s_ = s;
  w.r_ = r;
  w.cached_ = {{s, s}};
  return w;
}

RoWeight RoWeight::osc_power(double s, double eps) {
  if (eps < 0.0) throw std::invalid_argument("osc_power: eps must be >= 0");
  RoWeight w;
  w.family_ = WeightFamily::OscPower;
  w.s_ = s;
  w.eps_ = eps;
  w.cached_ = {{s - eps, s + eps}};
  return w;
}

RoWeight RoWeight::represented(std::vector<double> beta, std::vector<double> gamma,
                               double log_t_max) {
  if (beta.size() < 2 || gamma.size() != beta.size())
    throw std::invalid_argument("represented: beta/gamma need >= 2 matching samples");
  if (!(log_t_max > 0.0))
    throw std::invalid_argument("represented: log_t_max must be positive");
  RoWeight w;
  w.family_ = WeightFamily::Represented;
  w.log_t_max_ = log_t_max;
  w.beta_ = std::move(beta);
  w.gamma_ = std::move(gamma);
  // cumulative trapezoid of gamma(u) du; exact since gamma is pw-linear in u
  const double du = log_t_max / static_cast<double>(w.gamma_.size() - 1);
  w.gamma_integral_.resize(w.gamma_.size());
  w.gamma_integral_[0] = 0.0;
  for (std::size_t i = 1; i < w.gamma_.size(); ++i)
    w.gamma_integral_[i] =
        w.gamma_integral_[i - 1] + 0.5 * (w.gamma_[i - 1] + w.gamma_[i]) * du;
  return w;
}

double RoWeight::operator()(double t) const {
  if (!(t >= 1.0)) throw std::domain_error("RoWeight: argument must be >= 1");
  switch (family_) {
    case WeightFamily::Power:
      return std::pow(t, s_);
    case WeightFamily::PowerLog:
      return std::pow(t, s_) * std::pow(std::log(kE + t), r_);
    case WeightFamily::OscPower:
      return std::pow(t, s_) * std::exp(eps_ * std::sin(std::log(t)));
    case WeightFamily::Represented: {
      const double u = std::log(t);
      const double du = log_t_max_ / static_cast<double>(gamma_.size() - 1);
      double integral;
      if (u >= log_t_max_) {
        integral = gamma_integral_.back() + gamma_.back() * (u - log_t_max_);
      } else {
        const double pos = u / du;
        const auto i = static_cast<std::size_t>(pos);
        const double u0 = du * static_cast<double>(i);
        const double g0 = gamma_[i];
        const double g = pw_linear(gamma_, du, u);
        integral = gamma_integral_[i] + 0.5 * (g0 + g) * (u - u0);
      }
      return std::exp(pw_linear(beta_, du, u) + integral);
    }
  }
  return 1.0;
}

MatuszewskaIndices RoWeight::analytic_indices() const {
  MatuszewskaIndices m;
  m.method = IndexMode::Analytic;
  switch (family_) {
    case WeightFamily::Power:
    case WeightFamily::PowerLog:
      m.sigma0 = m.sigma1 = s_;
      return m;
    case WeightFamily::OscPower:
      m.sigma0 = s_ - eps_;
      m.sigma1 = s_ + eps_;
      return m;
    case WeightFamily::Represented:
      throw std::invalid_argument(
          "analytic indices are not defined for represented weights; use the estimator");
  }
  return m;
}

RoWeight RoWeight::shifted(double s) const {
  RoWeight w = *this;
  switch (family_) {
    case WeightFamily::Power:
    case WeightFamily::PowerLog:
    case WeightFamily::OscPower:
      w.s_ += s;
      break;
    case WeightFamily::Represented: {
      // t^s multiplies in as gamma -> gamma + s
      for (auto& g : w.gamma_) g += s;
      const double du = log_t_max_ / static_cast<double>(w.gamma_.size() - 1);
      for (std::size_t i = 0; i < w.gamma_integral_.size(); ++i)
        w.gamma_integral_[i] += s * du * static_cast<double>(i);
      break;
    }
  }
  if (w.cached_) w.cached_ = {{w.cached_->first + s, w.cached_->second + s}};
  return w;
}

std::string RoWeight::describe() const {
  std::ostringstream os;
  switch (family_) {
    case WeightFamily::Power:
      os << "power(s=" << s_ << ")";
      break;
    case WeightFamily::PowerLog:
      os << "powerlog(s=" << s_ << ",r=" << r_ << ")";
      break;
    case WeightFamily::OscPower:
      os << "oscpower(s=" << s_ << ",eps=" << eps_ << ")";
      break;
    case WeightFamily::Represented:
      os << "represented(n=" << gamma_.size() << ",logtmax=" << log_t_max_ << ")";
      break;
  }
  return os.str();
}

double evaluate(const RoWeight& phi, double t) { return phi(t); }

std::vector<double> geometric_grid(double lo, double hi, int count) {
  if (count < 2 || !(lo > 0.0) || !(hi > lo))
    throw std::invalid_argument("geometric_grid: need count >= 2 and 0 < lo < hi");
  std::vector<double> grid(static_cast<std::size_t>(count));
  const double step = std::log(hi / lo) / static_cast<double>(count - 1);
  for (int i = 0; i < count; ++i) grid[static_cast<std::size_t>(i)] = lo * std::exp(step * i);
  grid.front() = lo;
  grid.back() = hi;
  return grid;
}

namespace {

double scan_constant(const RoWeight& phi, const std::vector<double>& t_grid,
                     const std::vector<double>& lambda_grid, double t_cap) {
  double c = 1.0;
  for (double t : t_grid) {
    if (t > t_cap) continue;
    const double base = phi(t);
    for (double lam : lambda_grid) {
      const double ratio = phi(lam * t) / base;
      c = std::max(c, std::max(ratio, 1.0 / ratio));
    }
  }
  return c;
}

} // namespace

RoMembership check_ro_membership(const RoWeight& phi, double a,
                                 const std::vector<double>& t_grid,
                                 const std::vector<double>& lambda_grid,
                                 double growth_threshold) {
  if (t_grid.empty() || lambda_grid.empty())
    throw std::invalid_argument("check_ro_membership: grids must be nonempty");
  if (!(a > 1.0)) throw std::invalid_argument("check_ro_membership: a must be > 1");
  for (double lam : lambda_grid)
    if (lam < 1.0 || lam > a * (1.0 + 1e-12))
      throw std::invalid_argument("check_ro_membership: lambda grid outside [1, a]");

  const double t_max = *std::max_element(t_grid.begin(), t_grid.end());

  RoMembership result;
  result.c_estimate = scan_constant(phi, t_grid, lambda_grid, t_max);
  result.c_safe = result.c_estimate * 1.05;

  // growth probe: constant restricted to t <= T for T = t_max/16 .. t_max/2;
  // the last factor of headroom keeps lambda*t inside the scanned range
  for (int d = 4; d >= 1; --d)
    result.c_doubling.push_back(
        scan_constant(phi, t_grid, lambda_grid, t_max / std::pow(2.0, d)));
  int growing = 0;
  for (std::size_t i = 1; i < result.c_doubling.size(); ++i)
    if (result.c_doubling[i] >= growth_threshold * result.c_doubling[i - 1]) ++growing;
  result.violated = (growing >= 3);
  return result;
}

RoMembership check_ro_membership(const RoWeight& phi, const MembershipGridSpec& spec) {
  std::vector<double> lambdas(static_cast<std::size_t>(spec.lambda_count));
  for (int i = 0; i < spec.lambda_count; ++i)
    lambdas[static_cast<std::size_t>(i)] =
        1.0 + (spec.a - 1.0) * static_cast<double>(i) /
                  static_cast<double>(spec.lambda_count - 1);
  return check_ro_membership(phi, spec.a, geometric_grid(1.0, spec.t_max, spec.t_count),
                             lambdas, spec.growth_threshold);
}

MatuszewskaIndices indices(const RoWeight& phi, IndexMode mode, const IndexGridSpec& spec) {
  if (mode == IndexMode::Analytic) return phi.analytic_indices();

  if (spec.lambdas.empty() || spec.t_count < 2)
    throw std::invalid_argument("indices: estimation grid is empty");
  MatuszewskaIndices m;
  m.method = IndexMode::Estimated;
  m.grid = spec;
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  const auto t_grid = geometric_grid(spec.t_min, spec.t_max, spec.t_count);
  for (double lam : spec.lambdas) {
    const double log_lam = std::log(lam);
    for (double t : t_grid) {
      const double slope = std::log(phi(lam * t) / phi(t)) / log_lam;
      lo = std::min(lo, slope);
      hi = std::max(hi, slope);
    }
  }
  m.sigma0 = lo;
  m.sigma1 = hi;
  return m;
}

RoWeight shift(const RoWeight& phi, double s) { return phi.shifted(s); }

} // namespace sobscale
