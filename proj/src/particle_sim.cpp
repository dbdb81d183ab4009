#include "freefp/particle_sim.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <string>

#include "freefp/equilibrium.hpp"
#include "freefp/errors.hpp"
#include "freefp/potential.hpp"
#include "pairwise.hpp"

namespace freefp {

const char* to_string(NoiseMode mode) noexcept {
  return mode == NoiseMode::None ? "none" : "vanishing";
}

void SimConfig::validate() const {
  if (!std::isfinite(c)) throw ValidationError("c must be finite");
  if (n == 0) throw ValidationError("n must be positive");
  if (!(dt > 0.0 && dt <= 0.1)) throw ValidationError("dt must lie in (0, 0.1]");
  if (!(std::isfinite(t_final) && t_final >= 0.0))
    throw ValidationError("t_final must be finite and nonnegative");
  if (!(min_gap_factor > 0.0 && min_gap_factor <= 0.5))
    throw ValidationError("min_gap_factor must lie in (0, 0.5]");
  if (record_every == 0) throw ValidationError("record_every must be positive");
  if (!(box > 0.0)) throw ValidationError("box must be positive");
  if (p && !(*p >= 1.0 && *p <= 8.0)) throw ValidationError("p must lie in [1, 8]");
}

ParticleState::ParticleState(std::vector<double> positions, double t, std::uint64_t seed)
    : x_(std::move(positions)), t_(t), rng_(seed) {
  for (double v : x_)
    if (!std::isfinite(v)) throw ValidationError("non-finite particle position");
  if (detail::first_collision(x_) < x_.size())
    throw ValidationError("particle positions must be strictly ascending");
}

double ParticleState::min_gap() const noexcept {
  double g = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i + 1 < x_.size(); ++i) g = std::min(g, x_[i + 1] - x_[i]);
  return g;
}

std::vector<double> drift(const ParticleState& state, double c, unsigned workers) {
  const QuarticPotential v(c);
  const auto& x = state.positions();
  const std::size_t n = x.size();
  std::vector<double> d(n);
  detail::interaction_field(x, d, state.t(), workers);
  const double inv = 1.0 / static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) d[i] = -0.5 * v.grad(x[i]) + inv * d[i];
  return d;
}

namespace detail {

struct Stepper {
  const SimConfig& cfg;
  unsigned workers;

  // The drift at the current state is shared by every retry from it, so a
  // rejected proposal costs O(N).
  void advance(ParticleState& s, double h, int depth, const std::vector<double>* d0) const {
    const std::vector<double> fresh = d0 ? std::vector<double>{} : drift(s, cfg.c, workers);
    const std::vector<double>& d = d0 ? *d0 : fresh;
    const std::size_t n = s.x_.size();
    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i) y[i] = s.x_[i] + h * d[i];
    if (cfg.noise == NoiseMode::Vanishing) {
      const double amp = std::sqrt(2.0 * h / static_cast<double>(n));
      std::normal_distribution<double> normal;
      for (std::size_t i = 0; i < n; ++i) y[i] += amp * normal(s.rng_);
    }
    std::size_t bad = n;
    for (std::size_t i = 0; i + 1 < n; ++i) {
      if (!(y[i + 1] - y[i] >= cfg.min_gap_factor * (s.x_[i + 1] - s.x_[i]))) {
        bad = i;
        break;
      }
    }
    if (bad < n) {
      if (depth >= 30) throw StiffnessError(bad, s.t_);
      advance(s, 0.5 * h, depth + 1, &d);
      advance(s, 0.5 * h, depth + 1, nullptr);
      return;
    }
    for (std::size_t i = 0; i < n; ++i)
      if (!(std::abs(y[i]) <= cfg.box))
        throw ConfinementError("particle " + std::to_string(i) + " left the box", s.t_);
    s.x_ = std::move(y);
    s.t_ += h;
  }

  ParticleState run(ParticleState s, double h) const {
    advance(s, h, 0, nullptr);
    return s;
  }
};

} // namespace detail

ParticleState step(ParticleState state, const SimConfig& cfg) {
  cfg.validate();
  return detail::Stepper{cfg, detail::worker_count()}.run(std::move(state), cfg.dt);
}

namespace {

SeriesRow observe(const ParticleState& s, const SimConfig& cfg,
                  const std::vector<double>& quantiles) {
  const auto& x = s.positions();
  const double n = static_cast<double>(x.size());
  SeriesRow r;
  r.t = s.t();
  r.w1 = wasserstein_p(x, quantiles, 1.0);
  r.w2 = wasserstein_p(x, quantiles, 2.0);
  if (cfg.p) r.wp = wasserstein_p(x, quantiles, *cfg.p);
  r.sigma_v = sigma_v_empirical(x, cfg.c);
  r.dissipation = dissipation_empirical(x, cfg.c);
  for (double v : x) {
    r.m1 += v;
    r.m2 += v * v;
  }
  r.m1 /= n;
  r.m2 /= n;
  // A single particle has no gap; record 0 to keep the column finite.
  r.min_gap = x.size() > 1 ? s.min_gap() : 0.0;
  return r;
}

} // namespace

void simulate(const SimConfig& cfg, std::vector<double> init, ConvergenceSeries& out) {
  cfg.validate();
  if (init.size() != cfg.n)
    throw ValidationError("initial condition has " + std::to_string(init.size()) +
                          " points, expected " + std::to_string(cfg.n));
  std::sort(init.begin(), init.end());
  for (double v : init)
    if (!(std::abs(v) <= cfg.box)) throw ValidationError("initial point outside the box");

  const auto quantiles = equilibrium_measure(cfg.c).midpoint_quantiles(cfg.n);
  ParticleState state(std::move(init), 0.0, cfg.seed);
  const detail::Stepper stepper{cfg, detail::worker_count()};

  const auto steps = static_cast<std::size_t>(std::ceil(cfg.t_final / cfg.dt - 1e-9));
  out.append(observe(state, cfg, quantiles));
  for (std::size_t k = 1; k <= steps; ++k) {
    const double target = k == steps ? cfg.t_final : static_cast<double>(k) * cfg.dt;
    state = stepper.run(std::move(state), target - state.t());
    if (k % cfg.record_every == 0 || k == steps) out.append(observe(state, cfg, quantiles));
  }
}

ConvergenceSeries simulate(const SimConfig& cfg, std::vector<double> init) {
  ConvergenceSeries out;
  simulate(cfg, std::move(init), out);
  return out;
}

namespace {

struct Cursor {
  std::string_view text;
  std::size_t pos = 0;

  double number() {
    const char* first = text.data() + pos;
    const char* last = text.data() + text.size();
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec == std::errc::invalid_argument || ptr == first)
      throw ParseError("expected a number", pos);
    pos += static_cast<std::size_t>(ptr - first);
    if (ec == std::errc::result_out_of_range || !std::isfinite(v))
      throw ValidationError("initial-condition value out of range");
    return v;
  }

  void expect(char ch) {
    if (pos >= text.size() || text[pos] != ch)
      throw ParseError(std::string("expected '") + ch + "'", pos);
    ++pos;
  }

  void finish() const {
    if (pos != text.size()) throw ParseError("trailing characters", pos);
  }
};

std::vector<double> lattice(double lo, double hi, std::size_t n) {
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i)
    x[i] = lo + (hi - lo) * (static_cast<double>(i) + 0.5) / static_cast<double>(n);
  return x;
}

std::vector<double> read_points(const std::string& path, std::size_t n) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot read initial-condition file " + path);
  std::vector<double> x;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos) continue;
    const auto e = line.find_last_not_of(" \t\r");
    Cursor cur{std::string_view(line).substr(b, e - b + 1)};
    try {
      x.push_back(cur.number());
      cur.finish();
    } catch (const ParseError&) {
      throw ParseError(path + ":" + std::to_string(lineno) + ": malformed value", b + cur.pos);
    }
  }
  if (x.size() != n)
    throw ValidationError(path + " holds " + std::to_string(x.size()) + " values, expected " +
                          std::to_string(n));
  std::sort(x.begin(), x.end());
  // Coincident entries are spread deterministically.
  const double nudge = 1e-6 / static_cast<double>(n);
  for (std::size_t i = 1; i < n; ++i)
    if (!(x[i] > x[i - 1])) x[i] = x[i - 1] + nudge;
  return x;
}

} // namespace

std::vector<double> parse_initial(std::string_view spec, std::size_t n,
                                  [[maybe_unused]] std::uint64_t seed, double c) {
  if (n == 0) throw ValidationError("n must be positive");
  const auto colon = spec.find(':');
  const std::string_view head = spec.substr(0, colon);
  Cursor cur{spec, colon == std::string_view::npos ? spec.size() : colon + 1};

  if (head == "equilibrium") {
    if (colon != std::string_view::npos) throw ParseError("equilibrium takes no arguments", colon);
    return equilibrium_measure(c).midpoint_quantiles(n);
  }
  if (colon == std::string_view::npos) throw ParseError("expected ':' after kind", spec.size());

  if (head == "uniform") {
    const std::size_t at = cur.pos;
    const double lo = cur.number();
    cur.expect(',');
    const double hi = cur.number();
    cur.finish();
    if (!(lo < hi)) throw ParseError("uniform needs LO < HI", at);
    return lattice(lo, hi, n);
  }
  if (head == "twopoint") {
    const std::size_t at = cur.pos;
    const double x1 = cur.number();
    cur.expect(',');
    const double x2 = cur.number();
    cur.expect(',');
    const std::size_t wat = cur.pos;
    const double w = cur.number();
    cur.finish();
    if (!(x1 < x2)) throw ParseError("twopoint needs X1 < X2", at);
    if (!(w >= 0.0 && w <= 1.0)) throw ParseError("twopoint weight must lie in [0, 1]", wat);
    const auto k = static_cast<std::size_t>(std::llround(w * static_cast<double>(n)));
    const double nn = static_cast<double>(n);
    std::vector<double> x(n);
    for (std::size_t i = 0; i < n; ++i) {
      const double jitter = 1e-6 * static_cast<double>(i) / nn;
      x[i] = (i < k ? x1 : x2) + jitter;
    }
    if (detail::first_collision(x) < n)
      throw ValidationError("twopoint clusters overlap after jitter");
    return x;
  }
  if (head == "file") {
    if (cur.pos >= spec.size()) throw ParseError("file needs a path", cur.pos);
    return read_points(std::string(spec.substr(cur.pos)), n);
  }
  throw ParseError("unknown initial condition '" + std::string(head) + "'", 0);
}

} // namespace freefp
