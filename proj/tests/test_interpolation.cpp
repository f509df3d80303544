#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "sobscale/interpolation.hpp"

using namespace sobscale;

TEST_CASE("derived parameter closed forms") {
  // power weights give a pure power parameter with exponent (s-s0)/(s1-s0)
  const auto psi = make_psi(RoWeight::power(1.0), 0.0, 2.0);
  for (double t : {1.0, 4.0, 100.0})
    CHECK(psi(t) == doctest::Approx(std::sqrt(t)).epsilon(1e-13));
  CHECK(psi(0.25) == doctest::Approx(1.0));  // phi(1) branch below t = 1

  const auto osc = make_psi(RoWeight::osc_power(1.0, 0.5), 0.0, 2.0);
  const double expected = 2.0 * std::exp(0.5 * std::sin(std::log(2.0)));
  CHECK(osc(4.0) == doctest::Approx(expected).epsilon(1e-13));
}

TEST_CASE("derived parameter requires indices inside the bracket") {
  CHECK_THROWS_AS(make_psi(RoWeight::power(2.0), 0.0, 1.5), std::invalid_argument);
  CHECK_THROWS_AS(make_psi(RoWeight::osc_power(1.0, 0.5), 0.6, 3.0),
                  std::invalid_argument);
}

TEST_CASE("pseudoconcavity of elementary parameters") {
  const auto root = InterpolationParameter::closed_form(
      [](double t) { return std::sqrt(t); }, "sqrt");
  CHECK(is_pseudoconcave(root).pseudoconcave);

  const auto derived = make_psi(RoWeight::power(1.0), 0.0, 2.0);
  CHECK(is_pseudoconcave(derived).pseudoconcave);

  const auto quad = InterpolationParameter::closed_form(
      [](double t) { return t * t; }, "square");
  CHECK_FALSE(is_pseudoconcave(quad).pseudoconcave);
}

TEST_CASE("derived parameters are pseudoconcave for the admissible matrix") {
  const std::vector<RoWeight> weights = {RoWeight::power(1.0),
                                         RoWeight::power_log(1.0, 1.0),
                                         RoWeight::osc_power(1.0, 0.5)};
  const std::vector<std::pair<double, double>> pairs = {{0.0, 2.0}, {-0.4, 3.0}};
  for (const auto& w : weights)
    for (const auto& [s0, s1] : pairs)
      CHECK(is_pseudoconcave(make_psi(w, s0, s1)).pseudoconcave);
}

TEST_CASE("interpolation norm degenerates to the endpoint norms") {
  const Lattice lat(2, 8);
  const auto u = random_field(3, RoWeight::power(1.5), lat);
  const HilbertPairSpec pair(0.5, 2.5);

  const auto one = InterpolationParameter::closed_form([](double) { return 1.0; }, "1");
  CHECK(interp_norm(u, pair, one) ==
        doctest::Approx(sobolev_norm(u, 0.5)).epsilon(1e-13));

  const auto id = InterpolationParameter::closed_form([](double t) { return t; }, "t");
  CHECK(interp_norm(u, pair, id) ==
        doctest::Approx(sobolev_norm(u, 2.5)).epsilon(1e-13));
}

TEST_CASE("single mode interpolation norm") {
  const Lattice lat(2, 8);
  SpectralField u(lat);
  u.set({3, 4}, 1.0);  // modulus sqrt(26)
  const auto psi = make_psi(RoWeight::power(1.0), 0.0, 2.0);
  CHECK(interp_norm(u, HilbertPairSpec(0.0, 2.0), psi) ==
        doctest::Approx(std::sqrt(26.0)).epsilon(1e-13));
}

TEST_CASE("interpolation identity holds to machine precision") {
  const std::vector<RoWeight> weights = {RoWeight::power(1.0),
                                         RoWeight::power_log(1.0, 1.0),
                                         RoWeight::osc_power(1.0, 0.5)};
  const std::vector<std::pair<double, double>> pairs = {{0.0, 2.0}, {-0.4, 3.0}};
  for (const auto& w : weights)
    for (const auto& [s0, s1] : pairs)
      for (int K : {8, 16})
        for (std::uint64_t seed : {7ull, 8ull}) {
          const auto u = random_field(seed, RoWeight::power(2.0), Lattice(2, K));
          CAPTURE(w.describe());
          CHECK(verify_interp_identity(u, w, s0, s1) <= 1e-12);
        }
}

TEST_CASE("interpolation identity on the zero field") {
  const Lattice lat(2, 4);
  const SpectralField zero(lat);
  CHECK(verify_interp_identity(zero, RoWeight::power(1.0), 0.0, 2.0) == 0.0);
}

TEST_CASE("direct sums combine with exactly Pythagorean norms") {
  const Lattice lat(2, 6);
  const auto psi = make_psi(RoWeight::power(1.0), -0.5, 3.5);

  SUBCASE("two single modes") {
    SpectralField a(lat), b(lat);
    a.set({1, 0}, 2.0);
    b.set({0, 3}, 1.0);
    const std::vector<SpectralField> parts = {a, b};
    const std::vector<HilbertPairSpec> specs = {HilbertPairSpec(0.0, 2.0),
                                                HilbertPairSpec(0.0, 2.0)};
    CHECK(verify_direct_sum(parts, specs, psi) <= 1e-13);
  }

  SUBCASE("seeded random triple") {
    std::vector<SpectralField> parts;
    std::vector<HilbertPairSpec> specs;
    for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
      parts.push_back(random_field(seed, RoWeight::power(2.0), lat));
      specs.push_back(seed == 3 ? HilbertPairSpec(-0.4, 3.0) : HilbertPairSpec(0.0, 2.0));
    }
    CHECK(verify_direct_sum(parts, specs, psi) <= 1e-12);
  }

  SUBCASE("empty list") {
    CHECK(verify_direct_sum({}, {}, psi) == 0.0);
  }

  SUBCASE("length mismatch throws") {
    const std::vector<SpectralField> parts = {SpectralField(lat)};
    CHECK_THROWS_AS(verify_direct_sum(parts, {}, psi), std::invalid_argument);
  }
}

TEST_CASE("interpolation norm is monotone in the parameter") {
  const Lattice lat(2, 8);
  const auto u = random_field(5, RoWeight::power(1.5), lat);
  const HilbertPairSpec pair(0.0, 2.0);
  const auto small = InterpolationParameter::closed_form(
      [](double t) { return std::sqrt(t); }, "sqrt");
  const auto large = InterpolationParameter::closed_form(
      [](double t) { return std::sqrt(t) * (1.0 + std::log(1.0 + t)); }, "sqrt-log");
  CHECK(interp_norm(u, pair, small) <= interp_norm(u, pair, large) * (1.0 + 1e-13));
}
