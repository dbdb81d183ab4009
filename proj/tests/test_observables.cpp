#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <vector>

#include "doctest.h"
#include "freefp/equilibrium.hpp"
#include "freefp/errors.hpp"
#include "freefp/observables.hpp"
#include "oracles.hpp"

using namespace freefp;

TEST_CASE("empirical entropy: small systems") {
  const std::vector<double> two{-1.0, 1.0};
  CHECK(sigma_v_empirical(two, 0.0) == doctest::Approx(0.25 - 0.5 * std::log(2.0)).epsilon(1e-15));
  CHECK(sigma_v_empirical(two, 0.0) == doctest::Approx(-0.0966).epsilon(1e-3));
  const std::vector<double> one{1.3};
  CHECK(sigma_v_empirical(one, -1.0) == doctest::Approx(0.25 * std::pow(1.3, 4) - 0.5 * 1.69));
  const std::vector<double> dup{0.0, 0.0, 1.0};
  CHECK_THROWS_AS(sigma_v_empirical(dup, 0.0), CollisionError);
}

TEST_CASE("empirical dissipation: small systems") {
  const std::vector<double> origin{0.0};
  CHECK(dissipation_empirical(origin, 0.0) == 0.0);
  CHECK(dissipation_empirical(origin, 2.0) == 0.0);
  const std::vector<double> two{-1.0, 1.0};
  CHECK(dissipation_empirical(two, 0.0) == doctest::Approx(0.125).epsilon(1e-15));
}

TEST_CASE("analytic entropy of the uniform law") {
  SupportedDensity u{{{-1.0, 1.0}}, [](double) { return 0.5; }};
  CHECK(std::abs(sigma_v_analytic(u, 0.0) - (0.05 + 1.5 - std::log(2.0))) <= 1e-6);
  // Log-energy blows up as the support shrinks.
  SupportedDensity narrow{{{-5e-4, 5e-4}}, [](double) { return 1000.0; }};
  const double s = sigma_v_analytic(narrow, 0.0);
  CHECK(s == doctest::Approx(1.5 - std::log(1e-3)).epsilon(1e-6));
  CHECK(s > 7.0);
}

TEST_CASE("analytic entropy: refinement stability") {
  for (double c : {-3.0, -1.0, 0.0, 1.0}) {
    const auto mu = equilibrium_measure(c);
    const double s2 = sigma_v_analytic(mu, c, 2048);
    const double s4 = sigma_v_analytic(mu, c, 4096);
    CHECK(std::abs(s2 - s4) <= 1e-5 * std::abs(s4));
  }
}

TEST_CASE("analytic entropy: equilibrium is the minimiser") {
  for (double c : {0.0, -1.5}) {
    const auto mu = equilibrium_measure(c);
    const double star = sigma_v_analytic(mu, c);
    const Interval iv = mu.support().front();
    int checked = 0;
    for (int k = 1; k <= 10; ++k) {
      for (double eps : {-0.2, 0.2}) {
        auto shape = [=](double x) { return 1.0 + eps * std::cos(k * std::acos(x / iv.hi)); };
        SupportedDensity raw{mu.support(), [&mu, shape](double x) { return mu.density(x) * shape(x); }};
        const double z = raw.total_mass();
        SupportedDensity nu{mu.support(), [&mu, shape, z](double x) {
                              return mu.density(x) * shape(x) / z;
                            }};
        CHECK(sigma_v_analytic(nu, c) > star);
        ++checked;
      }
    }
    CHECK(checked == 20);
  }
}

TEST_CASE("empirical entropy of equilibrium samples approaches the analytic value") {
  const auto mu = equilibrium_measure(0.0);
  auto xs = mu.sample(4096, 11);
  std::sort(xs.begin(), xs.end());
  CHECK(std::abs(sigma_v_empirical(xs, 0.0) - sigma_v_analytic(mu, 0.0)) <= 0.02);
}

TEST_CASE("dissipation nearly vanishes on the equilibrium quantile lattice") {
  const auto mu = equilibrium_measure(0.0);
  CHECK(dissipation_empirical(mu.midpoint_quantiles(2048), 0.0) <= 0.01);
}

TEST_CASE("Wasserstein distance") {
  const auto mu = equilibrium_measure(0.0);
  const std::size_t n = 1000;
  auto q = mu.midpoint_quantiles(n);
  CHECK(wasserstein_p(q, mu, 1.0) == 0.0);
  CHECK(wasserstein_p(q, mu, 2.0) == 0.0);
  CHECK(wasserstein_p(q, mu, 3.5) == 0.0);

  auto shifted = q;
  for (double& x : shifted) x += 0.3;
  CHECK(std::abs(wasserstein_p(shifted, mu, 1.0) - 0.3) <= 2.0 / static_cast<double>(n));

  std::mt19937_64 gen(5);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> xs(64);
    for (double& x : xs) x = normal(gen);
    std::sort(xs.begin(), xs.end());
    CHECK(wasserstein_p(xs, mu, 1.0) <= wasserstein_p(xs, mu, 2.0) + 1e-15);
  }

  CHECK_THROWS_AS(wasserstein_p(q, mu, 0.5), DomainError);
  CHECK_THROWS_AS(wasserstein_p(q, mu, 9.0), DomainError);
}

TEST_CASE("Wasserstein bias of an off-grid quantile lattice is first order") {
  // Quantiles at i/(N+1) rather than (i - 1/2)/N: the distance to the
  // matched lattice halves when N doubles.
  const auto mu = equilibrium_measure(-1.0);
  auto w = [&](std::size_t n) {
    std::vector<double> xs(n);
    for (std::size_t i = 0; i < n; ++i)
      xs[i] = mu.quantile(static_cast<double>(i + 1) / static_cast<double>(n + 1));
    return wasserstein_p(xs, mu, 1.0);
  };
  const double ratio = w(500) / w(1000);
  CHECK(ratio == doctest::Approx(2.0).epsilon(0.1));
}

TEST_CASE("series CSV layout") {
  ConvergenceSeries s;
  s.append({0.0, 0.5, 0.6, std::nullopt, 1.0, 2.0, 0.0, 0.1, 1e-3});
  s.append({0.1, 0.25, 0.3, 0.1, 0.9, 1.0, 0.0, 0.2, 2e-3});
  const std::string csv = s.to_csv();
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  CHECK(line == "t,w1,w2,wp,sigma_v,dissipation,m1,m2,min_gap");
  std::getline(in, line);
  CHECK(line == "0,0.5,0.59999999999999998,,1,2,0,0.10000000000000001,0.001");
  std::getline(in, line);
  CHECK(line.substr(0, 30) == "0.10000000000000001,0.25,0.299");

  CHECK_THROWS_AS(s.append({0.1, 0, 0, std::nullopt, 0, 0, 0, 0, 0}), ValidationError);
  CHECK_THROWS_AS(s.append({0.2, NAN, 0, std::nullopt, 0, 0, 0, 0, 0}), ValidationError);
  CHECK(s.size() == 2);
}
