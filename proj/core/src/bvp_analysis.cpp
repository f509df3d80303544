#include "sobscale/bvp_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "sobscale/dft.hpp"

namespace sobscale {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

namespace {

// J_m for signed integer order
double bessel_j(int m, double x) {
  const double v = std::cyl_bessel_j(static_cast<double>(std::abs(m)), x);
  return (m < 0 && (m & 1)) ? -v : v;
}

double bessel_j_prime(int m, double x) {
  return 0.5 * (bessel_j(m - 1, x) - bessel_j(m + 1, x));
}

constexpr int kBoundarySeriesCutoff = 40;

} // namespace

TrigDiskSample::TrigDiskSample(SpectralField generator) : gen_(std::move(generator)) {
  if (gen_.lattice().dim != 2)
    throw std::invalid_argument("TrigDiskSample: generator must be a 2-d field");
}

TrigDiskSample TrigDiskSample::random(const BvpModel& model, Rng& rng, int mode_cap,
                                      double decay) {
  const Lattice lat(2, mode_cap);
  SpectralField gen = random_field(rng.bits(), RoWeight::power(decay), lat);
  TrigDiskSample sample(std::move(gen));
  if (model.has_boundary() && model.fredholm_data().dim_kernel > 0)
    sample = sample.without_mean();
  return sample;
}

std::complex<double> TrigDiskSample::eval(double r, double theta) const {
  const double x1 = kPi + r * std::cos(theta);
  const double x2 = kPi + r * std::sin(theta);
  std::complex<double> acc = 0.0;
  const auto& lat = gen_.lattice();
  for (std::size_t i = 0; i < gen_.coeffs().size(); ++i) {
    const Mode k = lat.mode_at(i);
    const double phase = k[0] * x1 + k[1] * x2;
    acc += gen_.coeffs()[i] * std::complex<double>(std::cos(phase), std::sin(phase));
  }
  return acc;
}

SpectralField TrigDiskSample::interior_generator(int q) const {
  SpectralField out = gen_;
  const auto& lat = gen_.lattice();
  for (std::size_t i = 0; i < out.coeffs().size(); ++i) {
    const Mode k = lat.mode_at(i);
    const double k2 = static_cast<double>(k[0]) * k[0] + static_cast<double>(k[1]) * k[1];
    out.coeffs()[i] *= (q == 1) ? k2 : k2 * k2;
  }
  return out;
}

std::vector<BoundaryField> TrigDiskSample::boundary_data(const BvpModel& model) const {
  BoundaryField trace(kBoundarySeriesCutoff), radial(kBoundarySeriesCutoff);
  BoundaryField lap_trace(kBoundarySeriesCutoff), lap_radial(kBoundarySeriesCutoff);
  const auto& lat = gen_.lattice();
  for (std::size_t i = 0; i < gen_.coeffs().size(); ++i) {
    const std::complex<double> c = gen_.coeffs()[i];
    if (c == 0.0) continue;
    const Mode k = lat.mode_at(i);
    const double R = std::hypot(static_cast<double>(k[0]), static_cast<double>(k[1]));
    // e^{ik.(center + (cos t, sin t))} = sign * sum_m J_m(R) e^{im delta} e^{imt}
    const double sign = ((k[0] + k[1]) & 1) ? -1.0 : 1.0;
    if (R == 0.0) {
      trace.set(0, trace.at(0) + sign * c);
      continue;
    }
    const double delta = std::atan2(static_cast<double>(k[0]), static_cast<double>(k[1]));
    for (int m = -kBoundarySeriesCutoff; m <= kBoundarySeriesCutoff; ++m) {
      const std::complex<double> rot(std::cos(m * delta), std::sin(m * delta));
      const std::complex<double> base = sign * c * rot;
      trace.set(m, trace.at(m) + base * bessel_j(m, R));
      radial.set(m, radial.at(m) + base * (R * bessel_j_prime(m, R)));
      lap_trace.set(m, lap_trace.at(m) - base * (R * R * bessel_j(m, R)));
      lap_radial.set(m, lap_radial.at(m) - base * (R * R * R * bessel_j_prime(m, R)));
    }
  }
  switch (model.kind()) {
    case ModelKind::DiskDirichlet:
      return {trace};
    case ModelKind::DiskNeumann:
      return {radial};
    case ModelKind::DiskBiharmonic:
      return {trace, radial};
    case ModelKind::TorusHelmholtz:
      return {};
  }
  return {};
}

std::complex<double> TrigDiskSample::disk_mean_integral() const {
  std::complex<double> acc = 0.0;
  const auto& lat = gen_.lattice();
  for (std::size_t i = 0; i < gen_.coeffs().size(); ++i) {
    const std::complex<double> c = gen_.coeffs()[i];
    if (c == 0.0) continue;
    const Mode k = lat.mode_at(i);
    const double R = std::hypot(static_cast<double>(k[0]), static_cast<double>(k[1]));
    const double sign = ((k[0] + k[1]) & 1) ? -1.0 : 1.0;
    if (R == 0.0)
      acc += c * kPi;
    else
      acc += sign * c * (2.0 * kPi * bessel_j(1, R) / R);
  }
  return acc;
}

TrigDiskSample TrigDiskSample::without_mean() const {
  const std::complex<double> mean = disk_mean_integral() / kPi;
  SpectralField gen = gen_;
  gen.set({0, 0}, gen.at({0, 0}) - mean);
  return TrigDiskSample(std::move(gen));
}

SolverOptions DiskNormContext::direct_options() {
  SolverOptions opts;
  opts.method = SolverOptions::Method::Direct;
  opts.tolerance = 1e-8;
  return opts;
}

DiskNormContext::DiskNormContext(int lattice_cutoff, SolverOptions options)
    : lattice_(2, lattice_cutoff),
      mask_(DomainMask::disk(lattice_)),
      options_(options) {
  polar_.reserve(mask_.inside_count());
  for (std::size_t flat : mask_.inside_indices()) {
    const auto p = mask_.point(flat);
    const double dx = p[0] - kPi;
    const double dy = p[1] - kPi;
    polar_.push_back({std::hypot(dx, dy), std::atan2(dy, dx)});
  }
}

QuotientSolver& DiskNormContext::solver_for(const RoWeight& weight) {
  const std::string key = weight.describe();
  auto it = solvers_.find(key);
  if (it == solvers_.end())
    it = solvers_.emplace(key, std::make_unique<QuotientSolver>(mask_, weight, options_))
             .first;
  return *it->second;
}

std::vector<std::complex<double>> DiskNormContext::target_of(
    const DiskPolynomial& u) const {
  std::vector<std::complex<double>> target;
  target.reserve(polar_.size());
  for (const auto& rt : polar_) target.push_back(u.eval(rt[0], rt[1]));
  return target;
}

QuotientResult DiskNormContext::omega_solve(const DiskPolynomial& u,
                                            const RoWeight& weight) {
  return solver_for(weight).solve(target_of(u));
}

std::vector<std::complex<double>> DiskNormContext::target_of_trig(
    const SpectralField& gen) {
  const int cap = gen.lattice().cutoff;
  auto it = phase_cache_.find(cap);
  if (it == phase_cache_.end()) {
    const Lattice glat(2, cap);
    std::vector<std::complex<double>> phases;
    phases.reserve(mask_.inside_count() * glat.mode_count());
    for (std::size_t flat : mask_.inside_indices()) {
      const auto p = mask_.point(flat);
      for (std::size_t m = 0; m < glat.mode_count(); ++m) {
        const Mode k = glat.mode_at(m);
        const double phase = k[0] * p[0] + k[1] * p[1];
        phases.emplace_back(std::cos(phase), std::sin(phase));
      }
    }
    it = phase_cache_.emplace(cap, std::move(phases)).first;
  }
  const auto& phases = it->second;
  const std::size_t n_modes = gen.coeffs().size();
  std::vector<std::complex<double>> target(mask_.inside_count(), 0.0);
  for (std::size_t a = 0; a < target.size(); ++a) {
    std::complex<double> acc = 0.0;
    const auto* row = &phases[a * n_modes];
    for (std::size_t m = 0; m < n_modes; ++m) acc += row[m] * gen.coeffs()[m];
    target[a] = acc;
  }
  return target;
}

QuotientResult DiskNormContext::omega_solve_trig(const SpectralField& generator,
                                                 const RoWeight& weight) {
  if (generator.lattice().cutoff > lattice_.cutoff)
    throw std::invalid_argument(
        "omega_solve_trig: generator must not exceed the context resolution");
  return solver_for(weight).solve(target_of_trig(generator));
}

double DiskNormContext::omega_norm_trig(const SpectralField& generator,
                                        const RoWeight& weight) {
  return omega_solve_trig(generator, weight).value;
}

double DiskNormContext::omega_norm(const DiskPolynomial& u, const RoWeight& weight) {
  return omega_solve(u, weight).value;
}

double DiskNormContext::omega_norm_l2(const DiskPolynomial& u) {
  return omega_norm(u, RoWeight::power(0.0));
}

std::pair<double, double> weight_index_bounds(const RoWeight& phi) {
  if (phi.cached_indices()) return *phi.cached_indices();
  const auto est = indices(phi, IndexMode::Estimated);
  return {est.sigma0 - 0.05, est.sigma1 + 0.05};
}

double data_tuple_norm(const BvpModel& model, const DiskPolynomial& f,
                       const std::vector<BoundaryField>& g, const RoWeight& phi,
                       DiskNormContext& ctx) {
  double acc = 0.0;
  if (!f.empty()) {
    const double fn = ctx.omega_norm(f, phi);
    acc += fn * fn;
  }
  const auto& orders = model.boundary_orders();
  for (std::size_t j = 0; j < orders.size(); ++j) {
    const RoWeight w = shift(phi, 2.0 * model.q() - orders[j] - 0.5);
    const double gn = gamma_norm(g[j], w);
    acc += gn * gn;
  }
  return std::sqrt(acc);
}

double harmonic_surrogate_norm(const BoundaryField& g, const RoWeight& eta) {
  // per-mode multiplier eta^2(<k>) <k>^{-1} * 2^{ord-1} / (2 pi), where ord is
  // the local growth order of eta at <k>. The 2^{ord-1} factor comes from the
  // disk integrals of the holomorphic modes (sum of the 2^j derivative
  // combinations at order j = ord); at ord = 0 it reduces to the plain
  // L2-trace constant 1/(4 pi).
  double acc = 0.0;
  const double ln2 = 0.69314718055994530942;
  for (int k = -g.cutoff(); k <= g.cutoff(); ++k) {
    const double m = smoothed_modulus({k, 0}, 1);
    const double w = eta(m);
    const double ord = std::log(eta(2.0 * m) / w) / ln2;
    acc += w * w / m * std::pow(2.0, ord - 1.0) * std::norm(g.at(k));
  }
  return std::sqrt(acc / (2.0 * kPi));
}

AprioriResult apriori_ratio(const BvpModel& model, const DiskPolynomial& u,
                            const RoWeight& phi, DiskNormContext& ctx) {
  if (model.kind() == ModelKind::TorusHelmholtz)
    throw std::logic_error("apriori_ratio: use torus_apriori_ratio");
  if (weight_index_bounds(phi).first <= -0.5)
    throw std::invalid_argument("apriori_ratio: requires sigma0(phi) > -1/2");
  if (u.empty() || u.l2_norm() == 0.0)
    throw std::invalid_argument("apriori_ratio: undefined for the zero function");

  const RoWeight top = shift(phi, 2.0 * model.q());
  AprioriResult res;
  res.numerator = ctx.omega_norm(u, top);
  const DiskPolynomial f = model.apply_interior(u);
  const auto g = model.apply_boundary(u);
  res.tuple = data_tuple_norm(model, f, g, phi, ctx);
  res.l2 = ctx.omega_norm_l2(u);
  res.ratio = res.numerator / (res.tuple + res.l2);

  // cross-check route for harmonic samples: both domain norms via the trace
  // surrogate
  if (f.empty() && model.q() == 1) {
    const BoundaryField trace = u.trace();
    const double num_s = harmonic_surrogate_norm(trace, top);
    const double l2_s = harmonic_surrogate_norm(trace, RoWeight::power(0.0));
    const double tuple_s = data_tuple_norm(model, f, g, phi, ctx);
    res.surrogate_ratio = num_s / (tuple_s + l2_s);
  }
  return res;
}

namespace {

bool is_zero_field(const SpectralField& f) {
  for (const auto& c : f.coeffs())
    if (c != std::complex<double>(0.0)) return false;
  return true;
}

double trig_tuple_norm(const BvpModel& model, const TrigDiskSample& u,
                       const RoWeight& phi, DiskNormContext& ctx) {
  double acc = 0.0;
  const SpectralField f_gen = u.interior_generator(model.q());
  if (!is_zero_field(f_gen)) {
    const double fn = ctx.omega_norm_trig(f_gen, phi);
    acc += fn * fn;
  }
  const auto g = u.boundary_data(model);
  const auto& orders = model.boundary_orders();
  for (std::size_t j = 0; j < orders.size(); ++j) {
    const RoWeight w = shift(phi, 2.0 * model.q() - orders[j] - 0.5);
    const double gn = gamma_norm(g[j], w);
    acc += gn * gn;
  }
  return std::sqrt(acc);
}

} // namespace

AprioriResult apriori_ratio(const BvpModel& model, const TrigDiskSample& u,
                            const RoWeight& phi, DiskNormContext& ctx) {
  if (model.kind() == ModelKind::TorusHelmholtz)
    throw std::logic_error("apriori_ratio: use torus_apriori_ratio");
  if (weight_index_bounds(phi).first <= -0.5)
    throw std::invalid_argument("apriori_ratio: requires sigma0(phi) > -1/2");
  if (is_zero_field(u.generator()))
    throw std::invalid_argument("apriori_ratio: undefined for the zero function");

  const RoWeight top = shift(phi, 2.0 * model.q());
  AprioriResult res;
  res.numerator = ctx.omega_norm_trig(u.generator(), top);
  res.tuple = trig_tuple_norm(model, u, phi, ctx);
  res.l2 = ctx.omega_norm_trig(u.generator(), RoWeight::power(0.0));
  res.ratio = res.numerator / (res.tuple + res.l2);
  return res;
}

double torus_apriori_ratio(const SpectralField& u, const RoWeight& phi) {
  if (weight_index_bounds(phi).first <= -0.5)
    throw std::invalid_argument("torus_apriori_ratio: requires sigma0(phi) > -1/2");
  const double numerator = h_norm(u, shift(phi, 2.0));
  if (numerator == 0.0)
    throw std::invalid_argument("torus_apriori_ratio: undefined for the zero field");
  const double data = h_norm(helmholtz_apply(u), phi);
  const double l2 = h_norm(u, RoWeight::power(0.0));
  return numerator / (data + l2);
}

IsoBounds isomorphism_condition(const BvpModel& model, const RoWeight& phi,
                                int n_samples, std::uint64_t seed,
                                DiskNormContext& ctx) {
  if (model.kind() == ModelKind::TorusHelmholtz)
    throw std::logic_error("isomorphism_condition: use the torus variant");
  if (n_samples < 1)
    throw std::invalid_argument("isomorphism_condition: need at least one sample");
  const RoWeight top = shift(phi, 2.0 * model.q());
  Rng rng(seed);
  IsoBounds bounds;
  bounds.lower = std::numeric_limits<double>::infinity();
  bounds.upper = 0.0;
  const double decay = sample_decay_for(model, phi);
  for (int i = 0; i < n_samples; ++i) {
    const TrigDiskSample u = TrigDiskSample::random(model, rng, 6, decay);
    const double denom = ctx.omega_norm_trig(u.generator(), top);
    const double tuple = trig_tuple_norm(model, u, phi, ctx);
    const double ratio = tuple / denom;
    bounds.lower = std::min(bounds.lower, ratio);
    bounds.upper = std::max(bounds.upper, ratio);
  }
  return bounds;
}

IsoBounds torus_isomorphism_condition(const RoWeight& phi, int lattice_cutoff,
                                      int n_samples, std::uint64_t seed) {
  const Lattice lat(2, lattice_cutoff);
  Rng rng(seed);
  IsoBounds bounds;
  bounds.lower = std::numeric_limits<double>::infinity();
  bounds.upper = 0.0;
  const RoWeight top = shift(phi, 2.0);
  for (int i = 0; i < n_samples; ++i) {
    const SpectralField u = random_field(rng.bits(), RoWeight::power(3.0), lat);
    const double ratio = h_norm(helmholtz_apply(u), phi) / h_norm(u, top);
    bounds.lower = std::min(bounds.lower, ratio);
    bounds.upper = std::max(bounds.upper, ratio);
  }
  return bounds;
}

double regularity_shift_exact(const SpectralField& u, const RoWeight& phi) {
  const double shifted_norm = h_norm(u, shift(phi, 2.0));
  const double applied_norm = h_norm(helmholtz_apply(u), phi);
  if (shifted_norm == 0.0) return std::abs(applied_norm - shifted_norm);
  return std::abs(applied_norm - shifted_norm) / shifted_norm;
}

CkCriterionResult ck_prediction(const RoWeight& phi, int k, int q, int n) {
  if (k < 0 || q < 1)
    throw std::invalid_argument("ck_prediction: need k >= 0 and q >= 1");
  return weighted_integral_criterion(phi, 2.0 * k + n - 1.0 - 4.0 * q);
}

ClassicalPrediction classical_prediction(const BvpModel& model, const RoWeight& phi1,
                                         const RoWeight& phi2, int n) {
  if (!model.has_boundary())
    throw std::invalid_argument("classical_prediction: model has no boundary data");
  if (weight_index_bounds(phi1).first <= -0.5 || weight_index_bounds(phi2).first <= -0.5)
    throw std::invalid_argument("classical_prediction: requires sigma0 > -1/2");
  ClassicalPrediction pred;
  pred.interior = weighted_integral_criterion(phi1, n - 1.0);
  const int m = model.max_boundary_order();
  pred.boundary =
      weighted_integral_criterion(phi2, 2.0 * m + n - 1.0 - 4.0 * model.q());
  pred.indeterminate = pred.interior.outcome == IntegralOutcome::Indeterminate ||
                       pred.boundary.outcome == IntegralOutcome::Indeterminate;
  pred.classical = pred.interior.holds && pred.boundary.holds;
  return pred;
}

double green_identity_residual_torus(const SpectralField& u, const SpectralField& v) {
  if (!(u.lattice() == v.lattice()))
    throw std::invalid_argument("green_identity_residual_torus: lattice mismatch");
  const Lattice& lat = u.lattice();
  const ModeTransform transform(lat.cutoff);
  const auto synth = [&](const SpectralField& w) {
    return lat.dim == 1 ? transform.synthesize(w.coeffs())
                        : transform.synthesize2(w.coeffs());
  };
  const auto au = synth(helmholtz_apply(u));
  const auto av = synth(helmholtz_apply(v));
  const auto ug = synth(u);
  const auto vg = synth(v);
  const double cell = std::pow(2.0 * kPi / lat.side(), lat.dim);
  std::complex<double> lhs = 0.0, rhs = 0.0;
  for (std::size_t j = 0; j < ug.size(); ++j) {
    lhs += au[j] * std::conj(vg[j]);
    rhs += ug[j] * std::conj(av[j]);
  }
  lhs *= cell;
  rhs *= cell;
  return std::abs(lhs - rhs) / std::max(1.0, std::abs(lhs) + std::abs(rhs));
}

DiskPolynomial random_bvp_sample(const BvpModel& model, Rng& rng, int mode_cap,
                                 int power_cap, double decay) {
  DiskPolynomial u = random_disk_polynomial(rng, mode_cap, power_cap, decay);
  if (model.has_boundary() && model.fredholm_data().dim_kernel > 0)
    u = u.without_mean();
  return u;
}

double sample_decay_for(const BvpModel& model, const RoWeight& phi) {
  return 2.0 * model.q() + weight_index_bounds(phi).second + 1.5;
}

} // namespace sobscale
