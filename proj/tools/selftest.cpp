#include "selftest.hpp"

#include <cmath>
#include <complex>
#include <cstdio>
#include <random>

#include "freefp/criticality.hpp"
#include "freefp/equilibrium.hpp"
#include "freefp/observables.hpp"
#include "freefp/particle_sim.hpp"
#include "freefp/polynomial.hpp"
#include "freefp/potential.hpp"
#include "freefp/singular_solver.hpp"

namespace freefp::cli {

namespace {

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

CheckResult normalization() {
  double worst = 0.0;
  for (double c : {-3.0, -2.0, -1.0, 0.0, 1.0, 5.0})
    worst = std::max(worst, std::abs(equilibrium_measure(c).as_density().total_mass() - 1.0));
  return {"normalization", worst <= 1e-10, fmt("max |mass - 1| = %.2e", worst)};
}

CheckResult euler_lagrange(std::initializer_list<double> cs) {
  double worst = 0.0;
  for (double c : cs)
    worst = std::max(worst, euler_lagrange_residual(equilibrium_measure(c),
                                                    QuarticPotential(c), 512));
  return {"euler_lagrange", worst <= 1e-3, fmt("max residual = %.2e", worst)};
}

CheckResult obstruction() {
  const auto best = obstruction_min_on_K(-2.0, 0.0, 201);
  const bool ok = std::abs(best.value - 9680.0 / 9.0) <= 1e-6 &&
                  std::abs(best.x - 10.0 / 3.0) <= 1e-6 && std::abs(best.c + 2.0) <= 1e-6;
  return {"obstruction_positive_on_K", ok, fmt("min f = %.10f", best.value)};
}

CheckResult descartes(int trials) {
  std::mt19937_64 gen(17);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int bad = 0;
  for (int t = 0; t < trials; ++t) {
    PolynomialCoeffs p({1.0});
    int pos = 0, neg = 0;
    const int factors = 1 + static_cast<int>(gen() % 6);
    for (int f = 0; f < factors; ++f) {
      if (u(gen) < 0.7) {
        const double r = (u(gen) < 0.5 ? -1.0 : 1.0) * (0.1 + 2.9 * u(gen));
        p = p * PolynomialCoeffs({-r, 1.0});
        (r > 0 ? pos : neg) += 1;
      } else {
        const double b = 4.0 * u(gen) - 2.0;
        p = p * PolynomialCoeffs({b * b / 4.0 + 0.1 + u(gen), b, 1.0});
      }
    }
    const auto d = descartes_counts(p);
    if (pos > d.positive || neg > d.negative || (d.positive - pos) % 2 != 0 ||
        (d.negative - neg) % 2 != 0)
      ++bad;
  }
  return {"descartes", bad == 0, std::to_string(trials - bad) + "/" + std::to_string(trials)};
}

CheckResult dissipation_identity() {
  const double c = -1.0;
  SimConfig cfg;
  cfg.c = c;
  cfg.n = 64;
  cfg.dt = 0.01;
  ParticleState s(parse_initial("uniform:-0.5,0.5", 64, 0), 0.0, 0);
  for (int k = 0; k < 50; ++k) s = step(std::move(s), cfg);
  const double e0 = sigma_v_empirical(s.positions(), c);
  const double d = dissipation_empirical(s.positions(), c);
  auto defect = [&](double h) {
    cfg.dt = h;
    return std::abs((sigma_v_empirical(step(s, cfg).positions(), c) - e0) / h + d);
  };
  const double ratio = defect(1e-3) / defect(1e-4);
  return {"dissipation_identity", ratio >= 5.0 && ratio <= 20.0, fmt("defect ratio = %.3f", ratio)};
}

CheckResult uniqueness() {
  const auto found = enumerate_stationary_onecut(0.0);
  bool ok = found.size() == 1 && found[0].case_tag == CaseTag::Symmetric;
  double worst = 0.0;
  if (ok) {
    const auto mu = equilibrium_measure(0.0);
    const Interval iv = mu.support().front();
    for (int i = 0; i < 512; ++i) {
      const double x = iv.lo + iv.width() * (i + 0.5) / 512.0;
      worst = std::max(worst, std::abs(found[0].density(x) - mu.density(x)));
    }
    ok = worst <= 1e-10;
  }
  return {"stationary_uniqueness", ok, fmt("max density gap = %.2e", worst)};
}

CheckResult unilateral() {
  const auto none = enumerate_stationary_onecut(-2.5);
  const auto two = enumerate_stationary_onecut(-std::sqrt(15.0));
  const bool ok = none.empty() && two.size() == 2;
  return {"unilateral_pair", ok,
          std::to_string(none.size()) + " at c=-2.5, " + std::to_string(two.size()) +
              " at c=-sqrt(15)"};
}

CheckResult r_identity() {
  const std::complex<double> zs[] = {{0.0, 2.0}, {1.0, 1.0}, {-3.0, 0.5}};
  double worst = 0.0;
  for (double c : {-2.0, 0.0})
    worst = std::max(worst, r_identity_residual(equilibrium_measure(c), c, zs));
  return {"r_identity", worst <= 1e-6, fmt("max residual = %.2e", worst)};
}

CheckResult stationarity() {
  SimConfig cfg;
  cfg.n = 256;
  cfg.dt = 0.005;
  cfg.t_final = 1.0;
  const auto s = simulate(cfg, parse_initial("equilibrium", cfg.n, 0, 0.0));
  double worst = 0.0;
  for (const auto& r : s.rows()) worst = std::max(worst, r.w2 - s.rows().front().w2);
  return {"equilibrium_stationary", worst <= 0.02, fmt("max W2 growth = %.2e", worst)};
}

} // namespace

std::vector<CheckResult> run_selftest(bool quick) {
  std::vector<CheckResult> out;
  auto guarded = [&](auto&& check) {
    try {
      out.push_back(check());
    } catch (const std::exception& e) {
      out.push_back({"exception", false, e.what()});
    }
  };
  guarded(normalization);
  guarded([] { return euler_lagrange({0.0, -3.0}); });
  guarded(obstruction);
  guarded([] { return descartes(200); });
  guarded(dissipation_identity);
  guarded(uniqueness);
  if (quick) return out;
  guarded([] { return euler_lagrange({-2.0, -1.0, 0.0, 1.0, -3.0}); });
  guarded(unilateral);
  guarded(r_identity);
  guarded(stationarity);
  return out;
}

} // namespace freefp::cli
