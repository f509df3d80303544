#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <sstream>

#include "sobscale/embedding.hpp"
#include "sobscale/partial_sum.hpp"
#include "sobscale/spectral_field.hpp"

using namespace sobscale;

TEST_CASE("smoothed modulus") {
  CHECK(smoothed_modulus({0, 0}, 2) == doctest::Approx(1.0));
  CHECK(smoothed_modulus({3, 4}, 2) == doctest::Approx(std::sqrt(26.0)));
  CHECK(smoothed_modulus({1, 0}, 2) == doctest::Approx(std::sqrt(2.0)));
  CHECK(smoothed_modulus({5, 9}, 1) == doctest::Approx(std::sqrt(26.0)));
}

TEST_CASE("weighted norm of elementary fields") {
  const Lattice lat(2, 8);
  SpectralField u(lat);
  CHECK(h_norm(u, RoWeight::power(1.0)) == 0.0);

  u.set({3, 4}, 1.0);
  CHECK(h_norm(u, RoWeight::power(1.0)) == doctest::Approx(std::sqrt(26.0)).epsilon(1e-14));

  SpectralField two(lat);
  two.set({1, 0}, 1.0);
  two.set({0, 5}, 1.0);
  const auto phi = RoWeight::power_log(1.0, 1.0);
  const double expected = std::sqrt(std::pow(phi(std::sqrt(2.0)), 2) +
                                    std::pow(phi(std::sqrt(26.0)), 2));
  CHECK(h_norm(two, phi) == doctest::Approx(expected).epsilon(1e-14));
}

TEST_CASE("random fields are deterministic in the seed") {
  const Lattice lat(2, 6);
  const auto a = random_field(42, RoWeight::power(1.0), lat);
  const auto b = random_field(42, RoWeight::power(1.0), lat);
  CHECK(a.coeffs() == b.coeffs());
  const auto c = random_field(43, RoWeight::power(1.0), lat);
  CHECK(a.coeffs() != c.coeffs());
}

TEST_CASE("random field second moments concentrate at the lattice sum") {
  const Lattice lat(2, 8);
  const double r = 1.0, s = 2.0;
  double lattice_sum = 0.0;
  for (std::size_t i = 0; i < lat.mode_count(); ++i)
    lattice_sum += std::pow(lat.modulus_at(i), 2.0 * r - 2.0 * s);
  double mean = 0.0;
  const int trials = 200;
  for (int seed = 0; seed < trials; ++seed) {
    const auto u = random_field(1000 + seed, RoWeight::power(s), lat);
    const double n = h_norm(u, RoWeight::power(r));
    mean += n * n;
  }
  mean /= trials;
  CHECK(mean / lattice_sum > 0.9);
  CHECK(mean / lattice_sum < 1.1);
}

TEST_CASE("norm monotonicity in the weight") {
  const Lattice lat(2, 10);
  const auto lo = RoWeight::power(1.0);
  const auto hi = RoWeight::power_log(1.0, 1.0);  // ln(e+t) >= 1
  for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
    const auto u = random_field(seed, RoWeight::power(1.0), lat);
    CHECK(h_norm(u, lo) <= h_norm(u, hi) * (1.0 + 1e-13));
  }
}

TEST_CASE("embedding constant is sharp on lattice fields") {
  const Lattice lat(2, 12);
  std::vector<double> moduli;
  for (std::size_t i = 0; i < lat.mode_count(); ++i) moduli.push_back(lat.modulus_at(i));
  const auto phi = RoWeight::osc_power(1.0, 0.5);
  const auto phi1 = RoWeight::power(1.5);
  const double c = embedding_constant(phi, phi1, moduli);
  for (std::uint64_t seed : {5ull, 6ull}) {
    const auto u = random_field(seed, RoWeight::power(1.0), lat);
    CHECK(h_norm(u, phi) <= c * h_norm(u, phi1) * (1.0 + 1e-13));
  }
}

TEST_CASE("embedding decisions for the basic pairs") {
  const auto p1 = RoWeight::power(1.0), p2 = RoWeight::power(2.0);
  const auto pl = RoWeight::power_log(1.0, 1.0);

  const auto up = embedding_bounded(p1, p2);
  CHECK(up.embeds);
  CHECK(up.constant == doctest::Approx(1.0).epsilon(1e-12));  // sup of t^{-1} at t=1

  CHECK_FALSE(embedding_bounded(p2, p1).embeds);
  CHECK_FALSE(embedding_bounded(pl, p1).embeds);  // unbounded log factor

  CHECK(embedding_compact(p1, p2));
  CHECK(embedding_compact(p1, pl));  // 1/ln -> 0
  CHECK_FALSE(embedding_compact(p1, p1));
  CHECK_FALSE(embedding_compact(pl, p1));
}

TEST_CASE("sobolev bracket constants are stable across resolutions") {
  const auto phi = RoWeight::osc_power(1.0, 0.5);
  const double s0 = 0.2, s1 = 1.8;
  std::vector<double> c0s, c1s;
  for (int K : {8, 16, 32, 64}) {
    const Lattice lat(2, K);
    std::vector<double> moduli;
    for (std::size_t i = 0; i < lat.mode_count(); ++i)
      moduli.push_back(lat.modulus_at(i));
    c0s.push_back(embedding_constant(RoWeight::power(s0), phi, moduli));
    c1s.push_back(embedding_constant(phi, RoWeight::power(s1), moduli));
  }
  for (std::size_t i = 1; i < c0s.size(); ++i) {
    CHECK(c0s[i] <= c0s[0] * 1.02);
    CHECK(c1s[i] <= c1s[0] * 1.02);
  }
  // the realized inequalities hold with those constants
  const Lattice lat(2, 16);
  const auto u = random_field(11, RoWeight::power(1.0), lat);
  CHECK(h_norm(u, RoWeight::power(s0)) <= c0s[1] * h_norm(u, phi) * (1.0 + 1e-13));
  CHECK(h_norm(u, phi) <= c1s[1] * h_norm(u, RoWeight::power(s1)) * (1.0 + 1e-13));
}

TEST_CASE("continuity criterion reproduces the classical threshold") {
  for (double r : {0.5, 0.9}) {
    const auto res = ck_embedding_criterion(RoWeight::power(r), 0, 2);
    CHECK_FALSE(res.holds);
  }
  for (double r : {1.1, 1.5, 2.0}) {
    const auto res = ck_embedding_criterion(RoWeight::power(r), 0, 2);
    CHECK(res.holds);
    CHECK(std::isfinite(res.integral_estimate));
  }
}

TEST_CASE("continuity criterion resolves the borderline by observation") {
  const auto diverging = ck_embedding_criterion(RoWeight::power(1.0), 0, 2);
  CHECK(diverging.outcome == IntegralOutcome::Divergent);
  CHECK_FALSE(diverging.holds);
  CHECK(std::isinf(diverging.integral_estimate));
  CHECK(diverging.decided_by == "observation");

  // one logarithm of extra decay turns the integral summable
  const auto converging = ck_embedding_criterion(RoWeight::power_log(1.0, 1.0), 0, 2);
  CHECK(converging.outcome == IntegralOutcome::Convergent);
  CHECK(converging.holds);
  CHECK(converging.decided_by == "observation");
  double partial = 0.0;
  for (double d : converging.decade_increments) partial += d;
  CHECK(converging.integral_estimate >= partial);
}

TEST_CASE("derivative partial sums of a single mode") {
  const Lattice lat(2, 16);
  SpectralField u(lat);
  u.set({2, 1}, 1.0);
  const auto sups = derivative_partial_sup(u, {1, 0}, {4, 8, 16});
  for (double s : sups) CHECK(s == doctest::Approx(2.0).epsilon(1e-10));
}

TEST_CASE("partial sums of absolutely summable coefficients stay bounded") {
  const Lattice lat(2, 64);
  // a full extra order of decay makes the coefficient tails negligible
  const auto u = above_threshold_field(lat, 0, 1.0);
  const auto sups = derivative_partial_sup(u, {0, 0}, {16, 32, 64});
  CHECK(std::abs(sups[2] - sups[1]) / sups[1] <= 0.02);
  CHECK(std::abs(sups[1] - sups[0]) / sups[0] <= 0.05);
}

TEST_CASE("partial sums at the threshold decay keep growing") {
  const Lattice lat(2, 64);
  SpectralField u(lat);
  for (std::size_t i = 0; i < lat.mode_count(); ++i) {
    const Mode k = lat.mode_at(i);
    // first-derivative content of <k>^{-2} decay in dimension 2
    u.coeffs()[i] = std::pow(smoothed_modulus(k, 2), -2.0);
  }
  const auto sups = derivative_partial_sup(u, {1, 0}, {16, 32, 64});
  CHECK(sups[1] > sups[0]);
  CHECK(sups[2] > sups[1]);
  CHECK(sups[2] / sups[1] >= 1.2);
}

TEST_CASE("derivative order is capped") {
  const Lattice lat(2, 4);
  SpectralField u(lat);
  u.set({1, 1}, 1.0);
  CHECK_THROWS_AS(derivative_partial_sup(u, {3, 2}, {4}), std::invalid_argument);
}

TEST_CASE("field csv round trip") {
  const Lattice lat(2, 3);
  const auto u = random_field(9, RoWeight::power(1.0), lat);
  std::stringstream buffer;
  write_csv(u, buffer);
  const auto v = read_field_csv(buffer);
  CHECK(v.lattice() == u.lattice());
  for (std::size_t i = 0; i < u.coeffs().size(); ++i)
    CHECK(std::abs(v.coeffs()[i] - u.coeffs()[i]) <= 1e-15);
}

TEST_CASE("real valued flag checks conjugate symmetry") {
  const Lattice lat(1, 4);
  SpectralField u(lat);
  u.set({2, 0}, {1.0, 3.0});
  u.set({-2, 0}, {1.0, -3.0});
  CHECK(u.is_real_valued());
  u.set({1, 0}, {0.5, 0.5});
  CHECK_FALSE(u.is_real_valued());
}
