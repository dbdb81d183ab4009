#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <vector>

#include "doctest.h"
#include "freefp/equilibrium.hpp"
#include "freefp/errors.hpp"
#include "freefp/observables.hpp"
#include "freefp/particle_sim.hpp"

using namespace freefp;

namespace {

SimConfig config(double c, std::size_t n, double dt, double t_final) {
  SimConfig cfg;
  cfg.c = c;
  cfg.n = n;
  cfg.dt = dt;
  cfg.t_final = t_final;
  return cfg;
}

double rms_gap(const std::vector<double>& a, const std::vector<double>& b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(acc / static_cast<double>(a.size()));
}

} // namespace

TEST_CASE("drift: two particles") {
  const auto d = drift(ParticleState({-1.0, 1.0}, 0.0, 0), 0.0);
  CHECK(d[0] == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(d[1] == doctest::Approx(-0.25).epsilon(1e-15));
}

TEST_CASE("drift is antisymmetric on mirrored configurations") {
  std::vector<double> half{0.1, 0.35, 0.8, 1.7, 2.05};
  std::vector<double> x;
  for (auto it = half.rbegin(); it != half.rend(); ++it) x.push_back(-*it);
  x.insert(x.end(), half.begin(), half.end());
  for (double c : {-3.0, 0.0, 1.5}) {
    const auto d = drift(ParticleState(x, 0.0, 0), c);
    for (std::size_t i = 0; i < x.size(); ++i)
      CHECK(d[i] == doctest::Approx(-d[x.size() - 1 - i]).epsilon(1e-13));
  }
}

TEST_CASE("drift is small on the equilibrium lattice") {
  const auto x = equilibrium_measure(0.0).midpoint_quantiles(512);
  const auto d = drift(ParticleState(x, 0.0, 0), 0.0);
  double acc = 0.0;
  for (double v : d) acc += v * v;
  CHECK(acc / 512.0 <= 0.05);
}

TEST_CASE("drift does not depend on the worker count") {
  const auto x = equilibrium_measure(-1.0).midpoint_quantiles(3000);
  const ParticleState s(x, 0.0, 0);
  CHECK(drift(s, -1.0, 1) == drift(s, -1.0, 4));
}

TEST_CASE("step: single particle steepest descent") {
  auto cfg = config(0.0, 1, 0.01, 0.01);
  const auto s = step(ParticleState({3.0}, 0.0, 0), cfg);
  CHECK(s.positions()[0] == doctest::Approx(2.865).epsilon(1e-15));
  CHECK(s.t() == doctest::Approx(0.01));
}

TEST_CASE("step preserves mirror symmetry without noise") {
  auto cfg = config(-1.0, 8, 0.01, 1.0);
  ParticleState s({-1.5, -0.9, -0.4, -0.1, 0.1, 0.4, 0.9, 1.5}, 0.0, 0);
  for (int k = 0; k < 300; ++k) s = step(std::move(s), cfg);
  const auto& x = s.positions();
  for (std::size_t i = 0; i < x.size(); ++i) CHECK(std::abs(x[i] + x[x.size() - 1 - i]) <= 1e-12);
}

TEST_CASE("step: stiff pair raises StiffnessError") {
  auto cfg = config(0.0, 2, 0.1, 0.1);
  cfg.box = 1e6;
  try {
    (void)step(ParticleState({1e5, 1e5 + 1.0}, 0.0, 0), cfg);
    FAIL("expected StiffnessError");
  } catch (const StiffnessError& e) {
    CHECK(e.pair() == 0);
  }
}

TEST_CASE("state and config validation") {
  CHECK_THROWS_AS(ParticleState({0.0, 0.0}, 0.0, 0), ValidationError);
  CHECK_THROWS_AS(ParticleState({0.0, NAN}, 0.0, 0), ValidationError);
  auto cfg = config(0.0, 4, 0.2, 1.0);
  CHECK_THROWS_AS(cfg.validate(), ValidationError);
  cfg.dt = 0.01;
  cfg.min_gap_factor = 0.6;
  CHECK_THROWS_AS(cfg.validate(), ValidationError);
  cfg.min_gap_factor = 0.1;
  cfg.p = 0.5;
  CHECK_THROWS_AS(cfg.validate(), ValidationError);
}

TEST_CASE("simulation is deterministic for a fixed seed") {
  auto cfg = config(-1.0, 64, 0.01, 1.0);
  cfg.noise = NoiseMode::Vanishing;
  cfg.seed = 42;
  cfg.p = 3.0;
  const auto init = parse_initial("uniform:-0.5,0.5", 64, 42);
  const auto a = simulate(cfg, init).to_csv();
  const auto b = simulate(cfg, init).to_csv();
  CHECK(a == b);
  cfg.seed = 43;
  CHECK(simulate(cfg, init).to_csv() != a);
}

TEST_CASE("relabelling the initial particles leaves the series unchanged") {
  auto cfg = config(0.0, 32, 0.01, 0.5);
  auto init = parse_initial("uniform:-1,1", 32, 0);
  const auto a = simulate(cfg, init).to_csv();
  std::reverse(init.begin(), init.end());
  std::swap(init[3], init[17]);
  CHECK(simulate(cfg, init).to_csv() == a);
}

TEST_CASE("discrete dissipation identity is first order in h") {
  const double c = -1.0;
  auto cfg = config(c, 64, 0.01, 0.5);
  ParticleState s(parse_initial("uniform:-0.5,0.5", 64, 0), 0.0, 0);
  for (int k = 0; k < 50; ++k) s = step(std::move(s), cfg);
  const double e0 = sigma_v_empirical(s.positions(), c);
  const double diss = dissipation_empirical(s.positions(), c);
  auto defect = [&](double h) {
    cfg.dt = h;
    const auto next = step(s, cfg);
    return std::abs((sigma_v_empirical(next.positions(), c) - e0) / h + diss);
  };
  const double ratio = defect(1e-3) / defect(1e-4);
  CHECK(ratio >= 5.0);
  CHECK(ratio <= 20.0);
}

TEST_CASE("confinement for c >= -2") {
  for (double c : {-2.0, 0.0, 1.0}) {
    auto cfg = config(c, 64, 0.01, 50.0);
    ParticleState s(parse_initial("uniform:-3,3", 64, 0), 0.0, 0);
    double worst = 0.0;
    for (int k = 0; k < 5000; ++k) {
      s = step(std::move(s), cfg);
      worst = std::max({worst, -s.positions().front(), s.positions().back()});
    }
    CHECK(worst <= 4.0);
  }
}

TEST_CASE("vanishing noise approaches the deterministic flow as N grows") {
  // The gap-protecting substeps make noisy runs cost roughly N^4 per unit
  // time, which keeps this check at small N.
  std::vector<double> gaps;
  for (std::size_t n : {16, 64, 256}) {
    auto cfg = config(0.0, n, 0.01, 1.0);
    cfg.seed = 9;
    ParticleState det(parse_initial("uniform:-1,1", n, 0), 0.0, 9);
    ParticleState noisy = det;
    for (int k = 0; k < 100; ++k) {
      cfg.noise = NoiseMode::None;
      det = step(std::move(det), cfg);
      cfg.noise = NoiseMode::Vanishing;
      noisy = step(std::move(noisy), cfg);
    }
    gaps.push_back(rms_gap(det.positions(), noisy.positions()));
  }
  MESSAGE("rms gaps " << gaps[0] << " " << gaps[1] << " " << gaps[2]);
  CHECK(gaps[0] > gaps[1]);
  CHECK(gaps[1] > gaps[2]);
}

TEST_CASE("equilibrium is stationary under the flow") {
  auto cfg = config(0.0, 512, 0.005, 5.0);
  const auto s = simulate(cfg, parse_initial("equilibrium", 512, 0, 0.0));
  const double w0 = s.rows().front().w2;
  for (const auto& r : s.rows()) CHECK(r.w2 <= w0 + 0.02);
}

TEST_CASE("entropy decreases along the deterministic flow") {
  auto cfg = config(0.0, 128, 0.005, 3.0);
  cfg.record_every = 1;
  const auto s = simulate(cfg, parse_initial("uniform:-0.5,0.5", 128, 0));
  CHECK(s.back().t == doctest::Approx(3.0));
  for (std::size_t i = 1; i < s.size(); ++i)
    CHECK(s.rows()[i].sigma_v <= s.rows()[i - 1].sigma_v + 1e-6 * cfg.dt);
  CHECK(s.back().sigma_v < s.rows().front().sigma_v);
}

TEST_CASE("recording schedule") {
  auto cfg = config(0.0, 16, 0.1, 0.95);
  cfg.record_every = 4;
  const auto s = simulate(cfg, parse_initial("uniform:-1,1", 16, 0));
  // t = 0, steps 4 and 8, and the shortened final step 10.
  REQUIRE(s.size() == 4);
  CHECK(s.rows()[1].t == doctest::Approx(0.4));
  CHECK(s.rows()[2].t == doctest::Approx(0.8));
  CHECK(s.rows()[3].t == 0.95);
  CHECK_FALSE(s.rows()[0].wp.has_value());
}

TEST_CASE("partial series survives a simulation error") {
  auto cfg = config(0.0, 2, 0.1, 1.0);
  cfg.box = 1e6;
  cfg.record_every = 1;
  ConvergenceSeries out;
  CHECK_THROWS_AS(simulate(cfg, {1e5, 1e5 + 1.0}, out), StiffnessError);
  CHECK(out.size() == 1);
  CHECK_THROWS_AS(simulate(cfg, {0.0, 1.0, 2.0}), ValidationError);
}

TEST_CASE("parse_initial grammar") {
  const auto u = parse_initial("uniform:-0.5,0.5", 4, 7);
  REQUIRE(u.size() == 4);
  CHECK(std::is_sorted(u.begin(), u.end()));
  CHECK(u.front() >= -0.5);
  CHECK(u.back() <= 0.5);

  const auto t = parse_initial("twopoint:-2,2,0.5", 4, 0);
  REQUIRE(t.size() == 4);
  CHECK(t[0] < t[1]);
  CHECK(t[1] < t[2]);
  CHECK(t[2] < t[3]);
  CHECK(t[1] == doctest::Approx(-2.0).epsilon(1e-6));
  CHECK(t[2] == doctest::Approx(2.0).epsilon(1e-6));

  const auto e = parse_initial("equilibrium", 100, 0, -3.0);
  CHECK(e == equilibrium_measure(-3.0).midpoint_quantiles(100));

  try {
    (void)parse_initial("uniform:0.5,-0.5", 4, 0);
    FAIL("expected ParseError");
  } catch (const ParseError& err) {
    CHECK(err.position() == 8);
  }
  try {
    (void)parse_initial("uniform:0,x", 4, 0);
    FAIL("expected ParseError");
  } catch (const ParseError& err) {
    CHECK(err.position() == 10);
  }
  CHECK_THROWS_AS(parse_initial("uniform:0,1,2", 4, 0), ParseError);
  CHECK_THROWS_AS(parse_initial("gaussian:0,1", 4, 0), ParseError);
  CHECK_THROWS_AS(parse_initial("uniform", 4, 0), ParseError);
  CHECK_THROWS_AS(parse_initial("equilibrium:1", 4, 0), ParseError);
  CHECK_THROWS_AS(parse_initial("twopoint:2,-2,0.5", 4, 0), ParseError);
  CHECK_THROWS_AS(parse_initial("twopoint:-2,2,1.5", 4, 0), ParseError);
  CHECK_THROWS_AS(parse_initial("uniform:-inf,1", 4, 0), ValidationError);
  CHECK_THROWS_AS(parse_initial("uniform:0,1", 0, 0), ValidationError);
}

TEST_CASE("parse_initial reads files") {
  const auto path = std::filesystem::temp_directory_path() / "freefp_init_test.txt";
  {
    std::ofstream out(path);
    out << "0.5\n-1\n\n0.5\n  2e-1 \n";
  }
  const auto x = parse_initial("file:" + path.string(), 4, 0);
  REQUIRE(x.size() == 4);
  CHECK(x[0] == -1.0);
  CHECK(x[1] == 0.2);
  CHECK(x[2] == 0.5);
  CHECK(x[3] > 0.5);
  CHECK_THROWS_AS(parse_initial("file:" + path.string(), 5, 0), ValidationError);
  {
    std::ofstream out(path);
    out << "0.5\nnan\n";
  }
  CHECK_THROWS_AS(parse_initial("file:" + path.string(), 2, 0), ValidationError);
  {
    std::ofstream out(path);
    out << "0.5\nabc\n";
  }
  CHECK_THROWS_AS(parse_initial("file:" + path.string(), 2, 0), ParseError);
  std::filesystem::remove(path);
  CHECK_THROWS_AS(parse_initial("file:" + path.string(), 2, 0), ValidationError);
}
