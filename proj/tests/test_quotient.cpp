#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <sstream>

#include "sobscale/dft.hpp"
#include "sobscale/quotient.hpp"
#include "sobscale/rng.hpp"
#include "support/oracles.hpp"

using namespace sobscale;

namespace {

SolverOptions cg_options() {
  SolverOptions opts;
  opts.method = SolverOptions::Method::ConjugateGradient;
  return opts;
}

} // namespace

TEST_CASE("zero data has zero quotient norm") {
  const Lattice lat(1, 8);
  const auto mask = DomainMask::interval(lat);
  std::vector<std::complex<double>> target(mask.inside_count(), 0.0);
  const auto res = quotient_norm({mask, target, RoWeight::power(1.0), cg_options()});
  CHECK(res.value == 0.0);
  CHECK(res.converged);
  CHECK(h_norm(res.extension, RoWeight::power(1.0)) == 0.0);
}

TEST_CASE("restricted single modes are bounded by their own norm") {
  const Lattice lat(1, 8);
  const auto mask = DomainMask::interval(lat);
  const auto phi = RoWeight::power(1.0);
  for (int k : {0, 2, 5}) {
    SpectralField mode(lat);
    mode.set({k, 0}, 1.0);
    const auto target = restriction(mode, mask);
    const auto res = quotient_norm({mask, target, phi, cg_options()});
    CHECK(res.converged);
    CHECK(res.value <= phi(smoothed_modulus({k, 0}, 1)) * (1.0 + 1e-12));
  }
}

TEST_CASE("iterative solves match the dense saddle-point oracle") {
  for (std::uint64_t seed : {11ull, 12ull, 13ull, 14ull, 15ull}) {
    const int K = 4 + static_cast<int>(seed % 9);
    const Lattice lat(1, K);
    const auto mask = DomainMask::interval(lat);
    const auto source = random_field(seed, RoWeight::power(1.5), lat);
    const auto target = restriction(source, mask);
    const auto phi = RoWeight::power(1.0);
    const auto res = quotient_norm({mask, target, phi, cg_options()});
    const double oracle = testing::quotient_norm_kkt(mask, phi, target);
    CHECK(res.converged);
    CHECK(std::abs(res.value - oracle) / oracle <= 1e-8);
  }
}

TEST_CASE("two dimensional solves match the oracle") {
  const Lattice lat(2, 4);
  const auto mask = DomainMask::disk(lat);
  const auto source = random_field(21, RoWeight::power(2.0), lat);
  const auto target = restriction(source, mask);
  const auto phi = RoWeight::power_log(1.0, 1.0);
  const auto res_cg = quotient_norm({mask, target, phi, cg_options()});
  SolverOptions direct;
  direct.method = SolverOptions::Method::Direct;
  const auto res_dir = quotient_norm({mask, target, phi, direct});
  const double oracle = testing::quotient_norm_kkt(mask, phi, target);
  CHECK(std::abs(res_cg.value - oracle) / oracle <= 1e-8);
  CHECK(std::abs(res_dir.value - oracle) / oracle <= 1e-8);
}

TEST_CASE("the minimizer restricts back to the data") {
  const Lattice lat(1, 10);
  const auto mask = DomainMask::interval(lat);
  const auto source = random_field(31, RoWeight::power(1.0), lat);
  const auto target = restriction(source, mask);
  const auto res = quotient_norm({mask, target, RoWeight::power(1.0), cg_options()});
  const auto back = restriction(res.extension, mask);
  double scale = 0.0;
  for (const auto& v : target) scale = std::max(scale, std::abs(v));
  for (std::size_t a = 0; a < target.size(); ++a)
    CHECK(std::abs(back[a] - target[a]) <= 1e-10 * scale);
}

TEST_CASE("no feasible extension beats the minimum") {
  const Lattice lat(1, 9);
  const auto mask = DomainMask::interval(lat);
  const auto source = random_field(41, RoWeight::power(1.0), lat);
  const auto target = restriction(source, mask);
  const auto phi = RoWeight::power(1.0);
  const auto res = quotient_norm({mask, target, phi, cg_options()});

  // the source itself is one admissible extension
  CHECK(res.value <= quotient_upper_bound(target, phi, source, mask) + 1e-10);

  Rng rng(4242);
  const ModeTransform transform(lat.cutoff);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<std::complex<double>> grid(lat.mode_count(), 0.0);
    for (std::size_t flat = 0; flat < lat.mode_count(); ++flat)
      if (!mask.flags()[flat]) grid[flat] = rng.gaussian_complex();
    auto coeffs = transform.analyze(grid);
    SpectralField w = res.extension;
    for (std::size_t i = 0; i < coeffs.size(); ++i) w.coeffs()[i] += coeffs[i];
    const double upper = quotient_upper_bound(target, phi, w, mask, 1e-6);
    CHECK(res.value <= upper + 1e-10);
  }
}

TEST_CASE("upper bound rejects infeasible extensions") {
  const Lattice lat(1, 6);
  const auto mask = DomainMask::interval(lat);
  const auto source = random_field(51, RoWeight::power(1.0), lat);
  const auto target = restriction(source, mask);
  SpectralField wrong = source;
  wrong.set({0, 0}, wrong.at({0, 0}) + 1.0);
  CHECK_THROWS_AS(quotient_upper_bound(target, RoWeight::power(1.0), wrong, mask, 1e-8),
                  std::invalid_argument);
}

TEST_CASE("quotient norms are monotone in the weight") {
  const Lattice lat(1, 8);
  const auto mask = DomainMask::interval(lat);
  const auto source = random_field(61, RoWeight::power(1.0), lat);
  const auto target = restriction(source, mask);
  const auto lo = quotient_norm({mask, target, RoWeight::power(1.0), cg_options()});
  const auto hi =
      quotient_norm({mask, target, RoWeight::power_log(1.0, 1.0), cg_options()});
  CHECK(lo.value <= hi.value * (1.0 + 1e-12));
}

TEST_CASE("bounded weight ratios bound quotient norms") {
  const Lattice lat(1, 8);
  const auto mask = DomainMask::interval(lat);
  const auto phi = RoWeight::power_log(0.5, 1.0);
  const auto phi1 = RoWeight::power(1.0);
  std::vector<double> moduli;
  for (std::size_t i = 0; i < lat.mode_count(); ++i) moduli.push_back(lat.modulus_at(i));
  double c = 0.0;
  for (double m : moduli) c = std::max(c, phi(m) / phi1(m));
  for (std::uint64_t seed : {71ull, 72ull, 73ull}) {
    const auto source = random_field(seed, RoWeight::power(1.0), lat);
    const auto target = restriction(source, mask);
    const auto a = quotient_norm({mask, target, phi, cg_options()});
    const auto b = quotient_norm({mask, target, phi1, cg_options()});
    CHECK(a.value <= c * b.value * (1.0 + 1e-10));
  }
}

TEST_CASE("iteration budget is honored and reported") {
  const Lattice lat(2, 8);
  const auto mask = DomainMask::disk(lat);
  const auto source = random_field(81, RoWeight::power(1.0), lat);
  const auto target = restriction(source, mask);
  SolverOptions strangled = cg_options();
  strangled.max_iterations = 2;
  const auto res = quotient_norm({mask, target, RoWeight::power(2.0), strangled});
  CHECK_FALSE(res.converged);
  CHECK(res.iterations <= 2);
  CHECK(res.value > 0.0);  // still an upper bound from the returned extension
}

TEST_CASE("mask construction and csv round trip") {
  const Lattice lat(2, 4);
  const auto mask = DomainMask::disk(lat);
  CHECK(mask.inside_count() > 0);
  CHECK(mask.inside_count() < lat.mode_count());

  std::stringstream buffer;
  mask.write_csv(buffer);
  const auto back = DomainMask::read_csv(buffer);
  CHECK(back.flags() == mask.flags());

  CHECK_THROWS_AS(DomainMask::from_flags(lat, std::vector<bool>(lat.mode_count(), true)),
                  std::invalid_argument);
  CHECK_THROWS_AS(DomainMask::from_flags(lat, std::vector<bool>(lat.mode_count(), false)),
                  std::invalid_argument);
}
