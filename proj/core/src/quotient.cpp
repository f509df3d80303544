#include "sobscale/quotient.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "sobscale/csvfmt.hpp"
#include "sobscale/dft.hpp"

namespace sobscale {

namespace {
constexpr double kPi = 3.14159265358979323846;

double max_abs(const std::vector<std::complex<double>>& v) {
  double m = 0.0;
  for (const auto& x : v) m = std::max(m, std::abs(x));
  return m;
}
} // namespace

void DomainMask::finalize() {
  inside_idx_.clear();
  for (std::size_t i = 0; i < inside_.size(); ++i)
    if (inside_[i]) inside_idx_.push_back(i);
  if (inside_idx_.empty())
    throw std::invalid_argument("DomainMask: no inside points");
  if (inside_idx_.size() == inside_.size())
    throw std::invalid_argument("DomainMask: no outside points");
}

std::array<double, 2> DomainMask::point(std::size_t flat) const {
  const int M = lattice_.side();
  const double step = 2.0 * kPi / M;
  if (lattice_.dim == 1) return {step * static_cast<double>(flat), 0.0};
  return {step * static_cast<double>(flat / static_cast<std::size_t>(M)),
          step * static_cast<double>(flat % static_cast<std::size_t>(M))};
}

DomainMask DomainMask::disk(const Lattice& lat, double radius) {
  if (lat.dim != 2) throw std::invalid_argument("DomainMask::disk: lattice must be 2-d");
  DomainMask m;
  m.lattice_ = lat;
  m.inside_.resize(lat.mode_count(), false);
  for (std::size_t flat = 0; flat < m.inside_.size(); ++flat) {
    const auto p = m.point(flat);
    const double dx = p[0] - kPi;
    const double dy = p[1] - kPi;
    m.inside_[flat] = (dx * dx + dy * dy <= radius * radius);
  }
  m.finalize();
  return m;
}

DomainMask DomainMask::interval(const Lattice& lat, double half_width) {
  if (lat.dim != 1)
    throw std::invalid_argument("DomainMask::interval: lattice must be 1-d");
  DomainMask m;
  m.lattice_ = lat;
  m.inside_.resize(lat.mode_count(), false);
  for (std::size_t flat = 0; flat < m.inside_.size(); ++flat)
    m.inside_[flat] = std::abs(m.point(flat)[0] - kPi) <= half_width;
  m.finalize();
  return m;
}

DomainMask DomainMask::from_flags(const Lattice& lat, std::vector<bool> inside) {
  if (inside.size() != lat.mode_count())
    throw std::invalid_argument("DomainMask: flag count does not match grid");
  DomainMask m;
  m.lattice_ = lat;
  m.inside_ = std::move(inside);
  m.finalize();
  return m;
}

void DomainMask::write_csv(std::ostream& os) const {
  os << "# mask," << lattice_.dim << "," << lattice_.cutoff << "\n";
  os << "i,j,inside\n";
  const int M = lattice_.side();
  for (std::size_t flat = 0; flat < inside_.size(); ++flat) {
    const long long i = static_cast<long long>(flat) / (lattice_.dim == 2 ? M : 1);
    const long long j = lattice_.dim == 2 ? static_cast<long long>(flat) % M : 0;
    const long long row = lattice_.dim == 2 ? i : static_cast<long long>(flat);
    os << format_int(row) << "," << format_int(j) << "," << (inside_[flat] ? 1 : 0)
       << "\n";
  }
}

DomainMask DomainMask::read_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line.rfind("# mask,", 0) != 0)
    throw std::runtime_error("mask csv: missing header");
  int dim = 0, cutoff = 0;
  {
    std::istringstream header(line.substr(7));
    char comma;
    header >> dim >> comma >> cutoff;
    if (!header) throw std::runtime_error("mask csv: malformed header");
  }
  if (!std::getline(is, line)) throw std::runtime_error("mask csv: missing columns");
  Lattice lat(dim, cutoff);
  std::vector<bool> flags(lat.mode_count(), false);
  const int M = lat.side();
  std::size_t rows = 0;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string cell;
    std::getline(row, cell, ',');
    const long long i = std::stoll(cell);
    std::getline(row, cell, ',');
    const long long j = std::stoll(cell);
    std::getline(row, cell, ',');
    const int bit = std::stoi(cell);
    const std::size_t flat = dim == 2
                                 ? static_cast<std::size_t>(i) * M + static_cast<std::size_t>(j)
                                 : static_cast<std::size_t>(i);
    flags.at(flat) = (bit != 0);
    ++rows;
  }
  if (rows != lat.mode_count())
    throw std::runtime_error("mask csv: row count does not match grid");
  return from_flags(lat, std::move(flags));
}

QuotientSolver::QuotientSolver(DomainMask mask, RoWeight weight, SolverOptions options)
    : mask_(std::move(mask)), weight_(std::move(weight)), options_(options) {
  const Lattice& lat = mask_.lattice();
  d_inv_.resize(lat.mode_count());
  std::vector<std::complex<double>> d_inv_c(lat.mode_count());
  for (std::size_t i = 0; i < d_inv_.size(); ++i) {
    const double w = weight_(lat.modulus_at(i));
    d_inv_[i] = 1.0 / (w * w);
    d_inv_c[i] = d_inv_[i];
  }
  // kernel on the full spatial grid: one synthesis of phi^{-2}
  const ModeTransform transform(lat.cutoff);
  kernel_ = lat.dim == 1 ? transform.synthesize(d_inv_c) : transform.synthesize2(d_inv_c);

  // dense Gram matrix over inside points from kernel displacements
  const auto& pts = mask_.inside_indices();
  const std::size_t n = pts.size();
  const std::size_t M = static_cast<std::size_t>(lat.side());
  gram_.resize(n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      std::size_t delta;
      if (lat.dim == 1) {
        delta = (pts[a] + M - pts[b]) % M;
      } else {
        const std::size_t a1 = pts[a] / M, a2 = pts[a] % M;
        const std::size_t b1 = pts[b] / M, b2 = pts[b] % M;
        delta = ((a1 + M - b1) % M) * M + ((a2 + M - b2) % M);
      }
      gram_[a * n + b] = kernel_[delta];
    }
}

std::vector<std::complex<double>> QuotientSolver::apply_kernel(
    const std::vector<std::complex<double>>& lambda) const {
  const std::size_t n = mask_.inside_count();
  std::vector<std::complex<double>> out(n, 0.0);
  for (std::size_t a = 0; a < n; ++a) {
    std::complex<double> acc = 0.0;
    const auto* row = &gram_[a * n];
    for (std::size_t b = 0; b < n; ++b) acc += row[b] * lambda[b];
    out[a] = acc;
  }
  return out;
}

void QuotientSolver::ensure_factorization() const {
  if (!chol_.empty()) return;
  const std::size_t n = mask_.inside_count();
  std::vector<std::complex<double>> L = gram_;
  double trace = 0.0;
  for (std::size_t j = 0; j < n; ++j) trace += L[j * n + j].real();
  const double jitter = options_.ridge * trace / static_cast<double>(n);
  for (std::size_t j = 0; j < n; ++j) L[j * n + j] += jitter;

  // in-place lower Cholesky, Hermitian positive definite
  for (std::size_t j = 0; j < n; ++j) {
    double diag = L[j * n + j].real();
    for (std::size_t m = 0; m < j; ++m) diag -= std::norm(L[j * n + m]);
    if (diag <= 0.0)
      throw std::runtime_error("QuotientSolver: factorization broke down; raise ridge");
    const double ljj = std::sqrt(diag);
    L[j * n + j] = ljj;
    for (std::size_t i = j + 1; i < n; ++i) {
      std::complex<double> acc = L[i * n + j];
      for (std::size_t m = 0; m < j; ++m)
        acc -= L[i * n + m] * std::conj(L[j * n + m]);
      L[i * n + j] = acc / ljj;
    }
    for (std::size_t m = j + 1; m < n; ++m) L[j * n + m] = 0.0;
  }
  chol_ = std::move(L);
}

namespace {

void cholesky_solve_inplace(const std::vector<std::complex<double>>& L, std::size_t n,
                            std::vector<std::complex<double>>& x) {
  // forward: L y = x
  for (std::size_t i = 0; i < n; ++i) {
    std::complex<double> acc = x[i];
    for (std::size_t m = 0; m < i; ++m) acc -= L[i * n + m] * x[m];
    x[i] = acc / L[i * n + i].real();
  }
  // backward: L^H z = y
  for (std::size_t ii = n; ii-- > 0;) {
    std::complex<double> acc = x[ii];
    for (std::size_t m = ii + 1; m < n; ++m) acc -= std::conj(L[m * n + ii]) * x[m];
    x[ii] = acc / L[ii * n + ii].real();
  }
}

} // namespace

QuotientResult QuotientSolver::finish(const std::vector<std::complex<double>>& lambda,
                                      const std::vector<std::complex<double>>& target,
                                      int iters, bool converged, double residual) const {
  const Lattice& lat = mask_.lattice();
  const ModeTransform transform(lat.cutoff);
  // scatter lambda to the grid and take the adjoint transform: E^* lambda
  std::vector<std::complex<double>> grid(lat.mode_count(), 0.0);
  const auto& pts = mask_.inside_indices();
  for (std::size_t a = 0; a < pts.size(); ++a) grid[pts[a]] = lambda[a];
  auto coeffs = lat.dim == 1 ? transform.analyze(grid) : transform.analyze2(grid);
  const double scale = std::pow(static_cast<double>(lat.side()), lat.dim);
  for (std::size_t i = 0; i < coeffs.size(); ++i) coeffs[i] *= scale * d_inv_[i];

  QuotientResult res;
  res.extension = SpectralField(lat, std::move(coeffs));
  res.value = h_norm(res.extension, weight_);
  res.iterations = iters;
  res.converged = converged;
  res.residual = residual;
  (void)target;
  return res;
}

QuotientResult QuotientSolver::solve(const std::vector<std::complex<double>>& target) const {
  const std::size_t n = mask_.inside_count();
  if (target.size() != n)
    throw std::invalid_argument("QuotientSolver: target size does not match mask");

  const double scale = max_abs(target);
  if (scale == 0.0) {
    QuotientResult res;
    res.extension = SpectralField(mask_.lattice());
    res.converged = true;
    return res;
  }

  const bool use_direct =
      options_.method == SolverOptions::Method::Direct ||
      (options_.method == SolverOptions::Method::Auto && n > 256);

  if (use_direct) {
    ensure_factorization();
    std::vector<std::complex<double>> lambda = target;
    cholesky_solve_inplace(chol_, n, lambda);
    double rel_res = 0.0;
    int refinements = 0;
    for (; refinements < 4; ++refinements) {
      const auto glam = apply_kernel(lambda);
      std::vector<std::complex<double>> r(n);
      double rmax = 0.0;
      for (std::size_t a = 0; a < n; ++a) {
        r[a] = target[a] - glam[a];
        rmax = std::max(rmax, std::abs(r[a]));
      }
      rel_res = rmax / scale;
      if (rel_res <= options_.tolerance) break;
      cholesky_solve_inplace(chol_, n, r);
      for (std::size_t a = 0; a < n; ++a) lambda[a] += r[a];
    }
    return finish(lambda, target, refinements, rel_res <= options_.tolerance, rel_res);
  }

  // conjugate gradients on the Hermitian positive definite dual system;
  // the CG residual is exactly the constraint defect E w - u
  const int max_iter =
      options_.max_iterations > 0 ? options_.max_iterations : static_cast<int>(2 * n) + 10;
  std::vector<std::complex<double>> lambda(n, 0.0), r = target, p = target;
  double rho = 0.0;
  for (const auto& x : r) rho += std::norm(x);
  double rel_res = max_abs(r) / scale;
  int iter = 0;
  while (rel_res > options_.tolerance && iter < max_iter) {
    const auto gp = apply_kernel(p);
    std::complex<double> pgp = 0.0;
    for (std::size_t a = 0; a < n; ++a) pgp += std::conj(p[a]) * gp[a];
    const double denom = pgp.real();
    if (!(denom > 0.0)) break;  // loss of positivity in finite precision
    const double alpha = rho / denom;
    for (std::size_t a = 0; a < n; ++a) {
      lambda[a] += alpha * p[a];
      r[a] -= alpha * gp[a];
    }
    double rho_next = 0.0;
    for (const auto& x : r) rho_next += std::norm(x);
    const double beta = rho_next / rho;
    rho = rho_next;
    for (std::size_t a = 0; a < n; ++a) p[a] = r[a] + beta * p[a];
    rel_res = max_abs(r) / scale;
    ++iter;
  }
  return finish(lambda, target, iter, rel_res <= options_.tolerance, rel_res);
}

QuotientResult quotient_norm(const QuotientProblem& p) {
  if (!(p.options.tolerance > 0.0))
    throw std::invalid_argument("quotient_norm: tolerance must be positive");
  QuotientSolver solver(p.mask, p.weight, p.options);
  return solver.solve(p.target);
}

std::vector<std::complex<double>> restriction(const SpectralField& w,
                                              const DomainMask& mask) {
  if (!(w.lattice() == mask.lattice()))
    throw std::invalid_argument("restriction: field and mask lattices differ");
  const ModeTransform transform(w.lattice().cutoff);
  const auto grid = w.lattice().dim == 1 ? transform.synthesize(w.coeffs())
                                         : transform.synthesize2(w.coeffs());
  std::vector<std::complex<double>> out;
  out.reserve(mask.inside_count());
  for (std::size_t flat : mask.inside_indices()) out.push_back(grid[flat]);
  return out;
}

double quotient_upper_bound(const std::vector<std::complex<double>>& target,
                            const RoWeight& phi, const SpectralField& w,
                            const DomainMask& mask, double feasibility_tol) {
  const auto values = restriction(w, mask);
  double scale = std::max(max_abs(target), 1e-300);
  for (std::size_t a = 0; a < values.size(); ++a)
    if (std::abs(values[a] - target[a]) > feasibility_tol * scale)
      throw std::invalid_argument("quotient_upper_bound: extension is not feasible");
  return h_norm(w, phi);
}

} // namespace sobscale
