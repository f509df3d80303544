#include "sobscale/bvp_model.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <stdexcept>

namespace sobscale {

namespace {
constexpr double kTwoPi = 6.28318530717958647692;

BoundaryField scaled(const BoundaryField& g, double factor) {
  BoundaryField out(g.cutoff());
  for (int k = -g.cutoff(); k <= g.cutoff(); ++k) out.set(k, g.at(k) * factor);
  return out;
}

/// Barycentric interpolant over a fixed node set; used to reuse first-pass
/// solutions as quadrature data in the biharmonic solve.
class Interpolant {
public:
  Interpolant(const std::vector<double>& nodes,
              std::vector<std::complex<double>> values)
      : nodes_(nodes), values_(std::move(values)) {
    const std::size_t n = nodes_.size();
    weights_.assign(n, 1.0);
    for (std::size_t i = 0; i < n; ++i) {
      double w = 1.0;
      for (std::size_t j = 0; j < n; ++j) {
        if (i != j) w *= (nodes_[i] - nodes_[j]);
        if (std::abs(w) > 1e280) w *= 1e-280;
        if (std::abs(w) < 1e-280 && w != 0.0) w *= 1e280;
      }
      weights_[i] = 1.0 / w;
    }
    double wmax = 0.0;
    for (double w : weights_) wmax = std::max(wmax, std::abs(w));
    for (double& w : weights_) w /= wmax;
  }

  std::complex<double> operator()(double r) const {
    std::complex<double> num = 0.0;
    double den = 0.0;
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
      const double diff = r - nodes_[i];
      if (std::abs(diff) < 1e-14) return values_[i];
      const double w = weights_[i] / diff;
      num += w * values_[i];
      den += w;
    }
    return num / den;
  }

private:
  std::vector<double> nodes_;
  std::vector<double> weights_;
  std::vector<std::complex<double>> values_;
};

/// Particular solution of u'' + u'/r - k^2 u/r^2 = rhs with u regular at 0 and
/// u(1) = 0, evaluated at radius r. The kernel is assembled from power ratios
/// bounded by one so large |k| stays stable. `base` is a reference rule on
/// [-1, 1] remapped to the split intervals [0, r] and [r, 1].
std::complex<double> green_value(int k, const RadialFunction& rhs, double r,
                                 const QuadratureRule& base) {
  const int a = std::abs(k);
  std::complex<double> inner = 0.0, outer = 0.0;
  // inner: integral over [0, r]
  for (std::size_t i = 0; i < base.size(); ++i) {
    const double rho = 0.5 * r * (base.nodes[i] + 1.0);
    const double w = 0.5 * r * base.weights[i];
    double kernel;
    if (a == 0)
      kernel = std::log(r);
    else
      kernel = (std::pow(rho / r, a) - std::pow(rho * r, a)) / (-2.0 * a);
    inner += w * kernel * rhs(rho) * rho;
  }
  // outer: integral over [r, 1], split dyadically away from the kernel's
  // endpoint so the negative powers / logarithm are resolved exactly
  double lo = r;
  while (lo < 1.0) {
    const double hi = std::min(1.0, 2.0 * lo);
    for (std::size_t i = 0; i < base.size(); ++i) {
      const double rho = 0.5 * ((hi - lo) * base.nodes[i] + (hi + lo));
      const double w = 0.5 * (hi - lo) * base.weights[i];
      double kernel;
      if (a == 0)
        kernel = std::log(rho);
      else
        kernel = (std::pow(r / rho, a) - std::pow(rho * r, a)) / (-2.0 * a);
      outer += w * kernel * rhs(rho) * rho;
    }
    lo = hi;
  }
  return inner + outer;
}

/// d/dr at r = 1 of the particular solution above: int_0^1 rho^{|k|} rhs rho drho.
std::complex<double> green_slope_at_one(int k, const RadialFunction& rhs,
                                        const QuadratureRule& unit_rule) {
  const int a = std::abs(k);
  std::complex<double> acc = 0.0;
  for (std::size_t i = 0; i < unit_rule.size(); ++i) {
    const double rho = unit_rule.nodes[i];
    acc += unit_rule.weights[i] * std::pow(rho, a) * rhs(rho) * rho;
  }
  return acc;
}

} // namespace

BvpModel BvpModel::torus_helmholtz() {
  return BvpModel(ModelKind::TorusHelmholtz, "torus-helmholtz", 1, {});
}
BvpModel BvpModel::disk_dirichlet() {
  return BvpModel(ModelKind::DiskDirichlet, "disk-dirichlet", 1, {0});
}
BvpModel BvpModel::disk_neumann() {
  return BvpModel(ModelKind::DiskNeumann, "disk-neumann", 1, {1});
}
BvpModel BvpModel::disk_biharmonic() {
  return BvpModel(ModelKind::DiskBiharmonic, "disk-biharmonic", 2, {0, 1});
}

const std::vector<BvpModel>& BvpModel::all_models() {
  static const std::vector<BvpModel> models = {
      torus_helmholtz(), disk_dirichlet(), disk_neumann(), disk_biharmonic()};
  return models;
}

BvpModel BvpModel::by_name(const std::string& name) {
  for (const auto& m : all_models())
    if (m.name() == name) return m;
  throw std::invalid_argument("unknown model: " + name);
}

int BvpModel::max_boundary_order() const {
  if (boundary_orders_.empty())
    throw std::logic_error("max_boundary_order: model has no boundary");
  return *std::max_element(boundary_orders_.begin(), boundary_orders_.end());
}

FredholmData BvpModel::fredholm_data() const {
  FredholmData data;
  if (kind_ == ModelKind::DiskNeumann) {
    data.dim_kernel = 1;
    data.dim_cokernel = 1;
    data.kernel_basis.push_back(DiskPolynomial::constant(1.0));
    data.cokernel_basis.push_back(DiskPolynomial::constant(1.0));
  }
  data.index = data.dim_kernel - data.dim_cokernel;
  return data;
}

DiskPolynomial BvpModel::apply_interior(const DiskPolynomial& u) const {
  switch (kind_) {
    case ModelKind::DiskDirichlet:
    case ModelKind::DiskNeumann:
      return u.laplacian().negated();
    case ModelKind::DiskBiharmonic:
      return u.laplacian().laplacian();
    case ModelKind::TorusHelmholtz:
      throw std::logic_error("torus model acts on torus fields, not disk functions");
  }
  return {};
}

std::vector<BoundaryField> BvpModel::apply_boundary(const DiskPolynomial& u) const {
  switch (kind_) {
    case ModelKind::DiskDirichlet:
      return {u.trace()};
    case ModelKind::DiskNeumann:
      return {u.radial_trace()};
    case ModelKind::DiskBiharmonic:
      return {u.trace(), u.radial_trace()};
    case ModelKind::TorusHelmholtz:
      return {};
  }
  return {};
}

DiskPolynomial BvpModel::apply_adjoint_interior(const DiskPolynomial& v) const {
  // both -Lap and Lap^2 are formally self-adjoint with constant coefficients
  return apply_interior(v);
}

std::vector<BoundaryField> BvpModel::apply_c_plus(const DiskPolynomial& v) const {
  switch (kind_) {
    case ModelKind::DiskDirichlet:
      return {scaled(v.radial_trace(), -1.0)};
    case ModelKind::DiskNeumann:
      return {v.trace()};
    case ModelKind::DiskBiharmonic:
      return {v.laplacian_radial_trace(), scaled(v.laplacian_trace(), -1.0)};
    case ModelKind::TorusHelmholtz:
      return {};
  }
  return {};
}

std::vector<BoundaryField> BvpModel::apply_c(const DiskPolynomial& u) const {
  switch (kind_) {
    case ModelKind::DiskDirichlet:
      return {u.radial_trace()};
    case ModelKind::DiskNeumann:
      return {u.trace()};
    case ModelKind::DiskBiharmonic:
      return {u.laplacian_radial_trace(), scaled(u.laplacian_trace(), -1.0)};
    case ModelKind::TorusHelmholtz:
      return {};
  }
  return {};
}

std::vector<BoundaryField> BvpModel::apply_b_plus(const DiskPolynomial& v) const {
  switch (kind_) {
    case ModelKind::DiskDirichlet:
      return {scaled(v.trace(), -1.0)};
    case ModelKind::DiskNeumann:
      return {v.radial_trace()};
    case ModelKind::DiskBiharmonic:
      return {v.trace(), v.radial_trace()};
    case ModelKind::TorusHelmholtz:
      return {};
  }
  return {};
}

ModeSolution solve_mode(const BvpModel& model, int k, const RadialFunction& f,
                        const std::vector<std::complex<double>>& g,
                        const std::vector<double>& radii, int quadrature_points) {
  if (model.kind() == ModelKind::TorusHelmholtz)
    throw std::logic_error("solve_mode: torus model is solved spectrally");
  if (g.size() != model.boundary_orders().size())
    throw std::invalid_argument("solve_mode: boundary data count mismatch");
  if (quadrature_points < 8)
    throw std::invalid_argument("solve_mode: quadrature grid too coarse");

  const int a = std::abs(k);
  const auto base = gauss_legendre(static_cast<std::size_t>(quadrature_points));
  const auto unit = gauss_legendre(static_cast<std::size_t>(quadrature_points), 0.0, 1.0);
  const bool have_f = static_cast<bool>(f);

  ModeSolution sol;
  sol.profile.assign(radii.size(), 0.0);

  if (model.kind() == ModelKind::DiskDirichlet || model.kind() == ModelKind::DiskNeumann) {
    // -(Lap u) = f  =>  mode operator applied to u equals -f
    const RadialFunction rhs =
        have_f ? RadialFunction([&f](double r) { return -f(r); }) : RadialFunction();

    std::complex<double> slope = 0.0;
    if (rhs) slope = green_slope_at_one(k, rhs, unit);

    std::complex<double> c = 0.0;  // coefficient of r^{|k|}
    if (model.kind() == ModelKind::DiskDirichlet) {
      c = g[0];
    } else if (k == 0) {
      // slope-constrained mode: the data must match the accumulated flux and
      // the homogeneous constant stays free (fixed later by normalization)
      sol.defect = g[0] - slope;
      sol.solvable =
          std::abs(sol.defect) <= 1e-10 * (1.0 + std::abs(g[0]) + std::abs(slope));
    } else {
      c = (g[0] - slope) / static_cast<double>(a);
    }

    for (std::size_t i = 0; i < radii.size(); ++i) {
      const double r = radii[i];
      std::complex<double> val = c * std::pow(r, a);
      if (rhs) val += green_value(k, rhs, r, base);
      sol.profile[i] = val;
    }
    return sol;
  }

  // biharmonic: Lap w = f, then Lap u_p = w, then fix both boundary rows
  std::complex<double> up_slope = 0.0;
  Interpolant* w_interp = nullptr;
  std::vector<std::complex<double>> w_values;
  std::unique_ptr<Interpolant> w_holder;
  if (have_f) {
    w_values.resize(unit.size());
    for (std::size_t i = 0; i < unit.size(); ++i)
      w_values[i] = green_value(k, f, unit.nodes[i], base);
    w_holder = std::make_unique<Interpolant>(unit.nodes, w_values);
    w_interp = w_holder.get();
    const RadialFunction w_fn = [&](double r) { return (*w_interp)(r); };
    up_slope = green_slope_at_one(k, w_fn, unit);
  }

  // boundary rows: alpha + beta = g1, a*alpha + (a+2)*beta = g2 - u_p'(1)
  const std::complex<double> rhs2 = g[1] - up_slope;
  const std::complex<double> alpha =
      (static_cast<double>(a + 2) * g[0] - rhs2) / 2.0;
  const std::complex<double> beta = (rhs2 - static_cast<double>(a) * g[0]) / 2.0;

  for (std::size_t i = 0; i < radii.size(); ++i) {
    const double r = radii[i];
    std::complex<double> val =
        alpha * std::pow(r, a) + beta * std::pow(r, a + 2);
    if (have_f) {
      const RadialFunction w_fn = [&](double rr) { return (*w_interp)(rr); };
      val += green_value(k, w_fn, r, base);
    }
    sol.profile[i] = val;
  }
  return sol;
}

std::vector<std::complex<double>> compatibility_defect(const BvpModel& model,
                                                       const DiskSolveInput& data) {
  const auto fred = model.fredholm_data();
  std::vector<std::complex<double>> defects;
  if (fred.dim_cokernel == 0) return defects;

  // Neumann: v = 1, C+ v = 1. defect = (f,1)_disk + (g,1)_circle
  const int n_quad = std::max(32, 4 * data.cutoff);
  const auto unit = gauss_legendre(static_cast<std::size_t>(n_quad), 0.0, 1.0);
  std::complex<double> f_int = 0.0;
  if (data.f)
    for (std::size_t i = 0; i < unit.size(); ++i)
      f_int += unit.weights[i] * data.f(0, unit.nodes[i]) * unit.nodes[i];
  std::complex<double> g0 = 0.0;
  if (!data.g.empty()) g0 = data.g[0].at(0);
  defects.push_back(kTwoPi * (f_int + g0));
  return defects;
}

std::vector<std::complex<double>> compatibility_defect(
    const BvpModel& model, const DiskPolynomial& f,
    const std::vector<BoundaryField>& g) {
  const auto fred = model.fredholm_data();
  std::vector<std::complex<double>> defects;
  for (const auto& v : fred.cokernel_basis) {
    std::complex<double> d = DiskPolynomial::disk_inner(f, v);
    const auto c_plus = model.apply_c_plus(v);
    for (std::size_t j = 0; j < g.size(); ++j) {
      // pad the shorter series
      const int cut = std::max(g[j].cutoff(), c_plus[j].cutoff());
      BoundaryField a(cut), b(cut);
      for (int k = -g[j].cutoff(); k <= g[j].cutoff(); ++k) a.set(k, g[j].at(k));
      for (int k = -c_plus[j].cutoff(); k <= c_plus[j].cutoff(); ++k)
        b.set(k, c_plus[j].at(k));
      d += BoundaryField::circle_inner(a, b);
    }
    defects.push_back(d);
  }
  return defects;
}

DiskPolynomial kernel_projection(const BvpModel& model, const DiskPolynomial& u) {
  if (model.fredholm_data().dim_kernel == 0) return u;
  return u.without_mean();
}

std::pair<DiskPolynomial, std::vector<BoundaryField>> range_projection(
    const BvpModel& model, DiskPolynomial f, std::vector<BoundaryField> g) {
  const auto fred = model.fredholm_data();
  if (fred.dim_cokernel == 0) return {std::move(f), std::move(g)};
  const auto defects = compatibility_defect(model, f, g);
  for (std::size_t i = 0; i < fred.cokernel_basis.size(); ++i) {
    const auto& v = fred.cokernel_basis[i];
    const std::complex<double> gram = DiskPolynomial::disk_inner(v, v);
    const std::complex<double> c = defects[i] / gram;
    for (int k = -v.cutoff(); k <= v.cutoff(); ++k)
      for (int j = 0; j <= v.max_extra_power(k); ++j)
        if (v.coefficient(k, j) != std::complex<double>(0.0))
          f.add_term(k, j, -c * v.coefficient(k, j));
  }
  return {std::move(f), std::move(g)};
}

DiskSolveResult solve(const BvpModel& model, const DiskSolveInput& data,
                      double compatibility_tol) {
  if (model.kind() == ModelKind::TorusHelmholtz)
    throw std::logic_error("solve: torus model is solved spectrally");
  if (data.g.size() != model.boundary_orders().size())
    throw std::invalid_argument("solve: boundary data count mismatch");
  const int K = data.cutoff;
  const int n_quad = std::max(32, 4 * K);

  DiskSolveResult result;
  result.defects = compatibility_defect(model, data);

  // data scale for the relative compatibility threshold
  double scale = 1.0;
  for (const auto& g : data.g)
    for (int k = -g.cutoff(); k <= g.cutoff(); ++k)
      scale = std::max(scale, std::abs(g.at(k)));
  if (data.f) {
    const auto probe = gauss_legendre(16, 0.0, 1.0);
    for (std::size_t i = 0; i < probe.size(); ++i)
      scale = std::max(scale, std::abs(data.f(0, probe.nodes[i])));
  }
  for (const auto& d : result.defects)
    if (std::abs(d) > compatibility_tol * scale) {
      result.compatible = false;
      return result;
    }

  const auto radial = gauss_legendre(static_cast<std::size_t>(n_quad), 0.0, 1.0);
  result.u = DiskField(K, radial);
  for (int k = -K; k <= K; ++k) {
    RadialFunction fk;
    if (data.f) fk = [&data, k](double r) { return data.f(k, r); };
    std::vector<std::complex<double>> gk;
    gk.reserve(data.g.size());
    for (const auto& g : data.g) gk.push_back(std::abs(k) <= g.cutoff() ? g.at(k) : 0.0);
    auto mode = solve_mode(model, k, fk, gk, radial.nodes, n_quad);
    result.u.profile(k) = std::move(mode.profile);
  }

  if (model.fredholm_data().dim_kernel > 0) {
    // remove the kernel component: zero disk mean for the Neumann model
    std::complex<double> mean_int = 0.0;
    const auto& prof = result.u.profile(0);
    for (std::size_t i = 0; i < radial.size(); ++i)
      mean_int += radial.weights[i] * prof[i] * radial.nodes[i];
    const std::complex<double> c = -2.0 * mean_int;  // (2*pi*int)/(pi)
    for (auto& v : result.u.profile(0)) v += c;
  }
  return result;
}

SpectralField solve_torus_helmholtz(const SpectralField& f) {
  return f.multiplied([](double m) { return 1.0 / (m * m); });
}

namespace {

std::complex<double> disk_inner_quadrature(const DiskPolynomial& u,
                                           const DiskPolynomial& v,
                                           const QuadratureRule& rule) {
  const int K = std::max(u.cutoff(), v.cutoff());
  std::complex<double> acc = 0.0;
  for (int k = -K; k <= K; ++k) {
    std::complex<double> mode = 0.0;
    for (std::size_t i = 0; i < rule.size(); ++i)
      mode += rule.weights[i] * u.eval_mode(k, rule.nodes[i]) *
              std::conj(v.eval_mode(k, rule.nodes[i])) * rule.nodes[i];
    acc += mode;
  }
  return acc * kTwoPi;
}

std::complex<double> boundary_pairing(const std::vector<BoundaryField>& a,
                                      const std::vector<BoundaryField>& b) {
  std::complex<double> acc = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j)
    acc += BoundaryField::circle_inner(a[j], b[j]);
  return acc;
}

} // namespace

double green_identity_residual(const BvpModel& model, const DiskPolynomial& u,
                               const DiskPolynomial& v, int quadrature_points) {
  if (model.kind() == ModelKind::TorusHelmholtz)
    throw std::logic_error("green_identity_residual: use the torus overload");
  const auto rule = gauss_legendre(static_cast<std::size_t>(quadrature_points), 0.0, 1.0);

  const auto Au = model.apply_interior(u);
  const auto Av = model.apply_adjoint_interior(v);
  const std::complex<double> lhs_interior = disk_inner_quadrature(Au, v, rule);
  const std::complex<double> rhs_interior = disk_inner_quadrature(u, Av, rule);
  const std::complex<double> lhs_boundary =
      boundary_pairing(model.apply_boundary(u), model.apply_c_plus(v));
  const std::complex<double> rhs_boundary =
      boundary_pairing(model.apply_c(u), model.apply_b_plus(v));

  const double magnitude = std::abs(lhs_interior) + std::abs(rhs_interior) +
                           std::abs(lhs_boundary) + std::abs(rhs_boundary);
  const std::complex<double> gap =
      lhs_interior + lhs_boundary - rhs_interior - rhs_boundary;
  return std::abs(gap) / std::max(1.0, magnitude);
}

} // namespace sobscale
