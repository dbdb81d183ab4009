#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string_view>
#include <vector>

#include "freefp/observables.hpp"

namespace freefp {

namespace detail {
struct Stepper;
}

enum class NoiseMode {
  Vanishing,  // Brownian term scaled by sqrt(2/N)
  None,       // deterministic gradient flow
};

const char* to_string(NoiseMode mode) noexcept;

struct SimConfig {
  double c = 0.0;
  std::size_t n = 512;
  double dt = 1e-3;
  double t_final = 1.0;
  std::uint64_t seed = 0;
  NoiseMode noise = NoiseMode::None;
  double min_gap_factor = 0.1;
  std::size_t record_every = 10;
  /// Particles leaving [-box, box] abort the run with ConfinementError.
  double box = 1e3;
  /// Extra Wasserstein order recorded in the wp column.
  std::optional<double> p;

  /// Throws ValidationError on an inconsistent configuration.
  void validate() const;
};

/// Ordered particle positions, the current time and the noise stream.
class ParticleState {
public:
  /// Positions must be finite and strictly ascending (ValidationError).
  ParticleState(std::vector<double> positions, double t, std::uint64_t seed);

  const std::vector<double>& positions() const noexcept { return x_; }
  std::size_t size() const noexcept { return x_.size(); }
  double t() const noexcept { return t_; }
  double min_gap() const noexcept;

private:
  friend struct detail::Stepper;

  std::vector<double> x_;
  double t_;
  std::mt19937_64 rng_;
};

/// -V'(x_i)/2 + (1/N) sum_{j != i} 1/(x_i - x_j). Rows are summed in a fixed
/// order, so the result is bitwise independent of `workers`.
std::vector<double> drift(const ParticleState& state, double c, unsigned workers = 1);

/// One base step of explicit Euler(-Maruyama). The step is halved
/// recursively until no adjacent gap shrinks below min_gap_factor times its
/// current value within a substep; more than 30 halvings raise
/// StiffnessError.
ParticleState step(ParticleState state, const SimConfig& cfg);

/// Runs to t_final from `init` (sorted internally), appending a row at t = 0,
/// every record_every steps, and at the final step. Rows recorded before a
/// SimulationError stay in `out`.
void simulate(const SimConfig& cfg, std::vector<double> init, ConvergenceSeries& out);
ConvergenceSeries simulate(const SimConfig& cfg, std::vector<double> init);

/// Initial positions from the mini-grammar
///   uniform:LO,HI | equilibrium | twopoint:X1,X2,W | file:PATH
/// `uniform` and `equilibrium` are midpoint quantile lattices (the latter of
/// the equilibrium measure for c); `twopoint` puts round(W n) particles at X1
/// and the rest at X2 with a 1e-6 (i/n) spread; `file` reads one value per
/// line and must yield exactly n values. Malformed text raises ParseError,
/// non-finite or degenerate values ValidationError.
std::vector<double> parse_initial(std::string_view spec, std::size_t n,
                                  std::uint64_t seed, double c = 0.0);

} // namespace freefp
