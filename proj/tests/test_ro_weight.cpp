#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "sobscale/ro_weight.hpp"

using namespace sobscale;

TEST_CASE("power weights evaluate in closed form") {
  const auto w = RoWeight::power(2.0);
  CHECK(w(10.0) == doctest::Approx(100.0).epsilon(1e-14));
  CHECK(w(1.0) == doctest::Approx(1.0));
  CHECK_THROWS_AS(w(0.5), std::domain_error);
}

TEST_CASE("oscillating weight starts at one") {
  const auto w = RoWeight::osc_power(1.0, 0.5);
  CHECK(w(1.0) == doctest::Approx(1.0).epsilon(1e-15));
  // t^s e^{eps sin ln t}
  const double t = 7.3;
  CHECK(w(t) == doctest::Approx(t * std::exp(0.5 * std::sin(std::log(t)))).epsilon(1e-14));
}

TEST_CASE("represented weight with constant exponent matches the power family") {
  const int n = 129;
  std::vector<double> beta(n, 0.0), gamma(n, 1.7);
  const auto w = RoWeight::represented(beta, gamma, std::log(1e8));
  const auto p = RoWeight::power(1.7);
  const double e = 2.718281828459045;
  CHECK(std::abs(w(e) - p(e)) / p(e) <= 1e-10);
  for (double t : {1.0, 3.0, 97.0, 12345.0})
    CHECK(std::abs(w(t) - p(t)) / p(t) <= 1e-10);
}

TEST_CASE("membership scan reports the exact constant for powers") {
  const auto grid_t = geometric_grid(1.0, 1e6, 200);
  std::vector<double> grid_l;
  for (int i = 0; i <= 16; ++i) grid_l.push_back(1.0 + i / 16.0);
  const auto m = check_ro_membership(RoWeight::power(3.0), 2.0, grid_t, grid_l);
  CHECK(m.c_estimate == doctest::Approx(8.0).epsilon(1e-12));
  CHECK_FALSE(m.violated);
}

TEST_CASE("membership scan is stable for the oscillating family") {
  const auto m = check_ro_membership(RoWeight::osc_power(1.0, 0.5));
  CHECK(m.c_estimate <= std::pow(2.0, 1.5) * std::exp(1.0));
  CHECK_FALSE(m.violated);
}

TEST_CASE("membership scan rejects an unbounded local exponent") {
  const int n = 257;
  std::vector<double> beta(n, 0.0), gamma(n);
  const double L = std::log(1e6);
  for (int i = 0; i < n; ++i) gamma[static_cast<std::size_t>(i)] = L * i / (n - 1);
  const auto m = check_ro_membership(RoWeight::represented(beta, gamma, L));
  CHECK(m.violated);
}

TEST_CASE("membership scan validates its grids") {
  CHECK_THROWS_AS(check_ro_membership(RoWeight::power(1.0), 2.0, {}, {1.5}),
                  std::invalid_argument);
  CHECK_THROWS_AS(check_ro_membership(RoWeight::power(1.0), 2.0, {2.0}, {}),
                  std::invalid_argument);
  CHECK_THROWS_AS(check_ro_membership(RoWeight::power(1.0), 2.0, {2.0}, {3.0}),
                  std::invalid_argument);
}

TEST_CASE("analytic indices per family") {
  const auto p = indices(RoWeight::power(2.0), IndexMode::Analytic);
  CHECK(p.sigma0 == 2.0);
  CHECK(p.sigma1 == 2.0);
  const auto o = indices(RoWeight::osc_power(1.0, 0.5), IndexMode::Analytic);
  CHECK(o.sigma0 == doctest::Approx(0.5));
  CHECK(o.sigma1 == doctest::Approx(1.5));
  std::vector<double> b(8, 0.0), g(8, 1.0);
  CHECK_THROWS_AS(
      indices(RoWeight::represented(b, g, 10.0), IndexMode::Analytic),
      std::invalid_argument);
}

TEST_CASE("estimated indices agree with the analytic values within 0.05") {
  const std::vector<RoWeight> weights = {
      RoWeight::power(-0.4),        RoWeight::power(0.0),
      RoWeight::power(1.0),         RoWeight::power(2.0),
      RoWeight::power_log(0.0, 1.0), RoWeight::power_log(1.0, 1.0),
      RoWeight::osc_power(1.0, 0.5)};
  for (const auto& w : weights) {
    const auto exact = w.analytic_indices();
    const auto est = indices(w, IndexMode::Estimated);
    CAPTURE(w.describe());
    CHECK(std::abs(est.sigma0 - exact.sigma0) <= 0.05);
    CHECK(std::abs(est.sigma1 - exact.sigma1) <= 0.05);
    CHECK(est.sigma0 <= est.sigma1);
  }
}

TEST_CASE("shift multiplies by a power and shifts the indices") {
  const auto shifted = shift(RoWeight::power(1.0), 2.0);
  CHECK(shifted.family() == WeightFamily::Power);
  CHECK(shifted(10.0) == doctest::Approx(1000.0).epsilon(1e-14));

  const auto osc = shift(RoWeight::osc_power(1.0, 0.5), 2.0).analytic_indices();
  CHECK(osc.sigma0 == doctest::Approx(2.5));
  CHECK(osc.sigma1 == doctest::Approx(3.5));

  // shift by zero is the identity
  const auto w = RoWeight::power_log(1.0, 2.0);
  const auto same = shift(w, 0.0);
  for (double t : {1.0, 10.0, 1e5}) CHECK(same(t) == doctest::Approx(w(t)).epsilon(1e-15));
}

TEST_CASE("shift round trip returns the original weight") {
  const std::vector<RoWeight> weights = {RoWeight::power(1.0),
                                         RoWeight::power_log(1.0, 1.0),
                                         RoWeight::osc_power(1.0, 0.5)};
  for (const auto& w : weights) {
    const auto back = shift(shift(w, 1.3), -1.3);
    for (double t : geometric_grid(1.0, 1e8, 50)) {
      CHECK(std::abs(back(t) - w(t)) / w(t) <= 1e-12);
    }
  }
  // represented weights shift through their exponent samples
  std::vector<double> beta(17, 0.3), gamma(17, -0.2);
  const auto rep = RoWeight::represented(beta, gamma, 12.0);
  const auto rep_back = shift(shift(rep, 2.0), -2.0);
  for (double t : geometric_grid(1.0, 1e5, 30))
    CHECK(std::abs(rep_back(t) - rep(t)) / rep(t) <= 1e-12);
  const auto rep_shifted = shift(rep, 1.0);
  for (double t : geometric_grid(1.0, 1e4, 20))
    CHECK(std::abs(rep_shifted(t) - t * rep(t)) / (t * rep(t)) <= 1e-12);
}

TEST_CASE("fresh samples respect the reported membership constant") {
  const std::vector<RoWeight> weights = {RoWeight::power(1.0),
                                         RoWeight::power_log(1.0, 1.0),
                                         RoWeight::osc_power(1.0, 0.5)};
  std::uint64_t state = 88172645463325252ull;
  auto next = [&state]() {
    state ^= state << 13;
    state ^= state >> 7;
    state ^= state << 17;
    return static_cast<double>(state >> 11) * 0x1.0p-53;
  };
  for (const auto& w : weights) {
    const auto m = check_ro_membership(w);
    for (int i = 0; i < 500; ++i) {
      const double t = std::exp(next() * std::log(1e6));
      const double lam = 1.0 + next();
      const double ratio = w(lam * t) / w(t);
      CHECK(ratio <= m.c_safe);
      CHECK(1.0 / ratio <= m.c_safe);
    }
  }
}
