#include "commands.hpp"

#include <unistd.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "freefp/criticality.hpp"
#include "freefp/equilibrium.hpp"
#include "freefp/errors.hpp"
#include "freefp/observables.hpp"
#include "freefp/particle_sim.hpp"
#include "freefp/potential.hpp"
#include "freefp/singular_solver.hpp"
#include "json_io.hpp"
#include "selftest.hpp"

namespace freefp::cli {

bool write_atomic(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp-" + std::to_string(::getpid());
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) return false;
    f << content;
    f.flush();
    if (!f) {
      std::error_code ec;
      std::filesystem::remove(tmp, ec);
      return false;
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    return false;
  }
  return true;
}

namespace {

struct Options {
  double c = 0.0;
  std::size_t grid = 256;
  double tol = 1e-9;
  std::string out;
  bool quick = false;

  std::size_t n = 512;
  double dt = 1e-3;
  double t_final = 1.0;
  std::uint64_t seed = 0;
  std::string init = "uniform:-0.5,0.5";
  std::string noise = "none";
  std::size_t every = 10;
  std::optional<double> p;
  double min_gap_factor = 0.1;
};

// Sends a finished document to --out or to the stream.
int emit(const Options& o, const std::string& content, std::ostream& out, std::ostream& err) {
  if (o.out.empty()) {
    out << content;
    return Exit::ok;
  }
  if (!write_atomic(o.out, content)) {
    err << "error: cannot write " << o.out << "\n";
    return Exit::usage;
  }
  return Exit::ok;
}

int cmd_equilibrium(const Options& o, std::ostream& out, std::ostream& err) {
  const auto mu = equilibrium_measure(o.c);
  auto doc = io::to_json(mu);
  io::json nodes = io::json::array(), density = io::json::array();
  for (const Interval& iv : mu.support()) {
    for (std::size_t i = 0; i < o.grid; ++i) {
      const double x = i + 1 == o.grid
                           ? iv.hi
                           : iv.lo + iv.width() * static_cast<double>(i) /
                                         static_cast<double>(o.grid - 1);
      nodes.push_back(x);
      density.push_back(mu.density(x));
    }
  }
  io::json full = {{"c", o.c}};
  full.update(doc);
  full["nodes"] = std::move(nodes);
  full["density"] = std::move(density);
  return emit(o, full.dump(2) + "\n", out, err);
}

int cmd_stationary(const Options& o, std::ostream& out, std::ostream& err) {
  return emit(o, io::to_json(enumerate_stationary_onecut(o.c, o.tol)).dump(2) + "\n", out, err);
}

int cmd_critical(const Options& o, std::ostream& out, std::ostream& err) {
  const auto mu = equilibrium_measure(o.c);
  const std::complex<double> zs[] = {{0.0, 2.0}, {1.0, 1.0}, {-3.0, 0.5}};
  io::json rows = io::json::array();
  for (const auto& r : root_count_report(o.c))
    rows.push_back({{"m1_sign", r.m1_sign},
                    {"m2_plus_c_sign", r.m2_plus_c_sign},
                    {"positive_sign_changes", r.counts.positive},
                    {"negative_sign_changes", r.counts.negative},
                    {"zero_is_root", r.zero_is_root},
                    {"max_nonzero_real", r.max_nonzero_real}});
  const io::json doc = {
      {"c", o.c},
      {"measure", io::to_json(mu)},
      {"m1", mu.moment(1)},
      {"m2", mu.moment(2)},
      {"r_coefficients", r_polynomial(o.c, mu.moment(1), mu.moment(2)).coefficients()},
      {"euler_lagrange_residual", euler_lagrange_residual(mu, QuarticPotential(o.c), o.grid)},
      {"r_identity_residual", r_identity_residual(mu, o.c, zs)},
      {"root_counts", rows}};
  return emit(o, doc.dump(2) + "\n", out, err);
}

int cmd_simulate(const Options& o, bool summary, std::ostream& out, std::ostream& err) {
  SimConfig cfg;
  cfg.c = o.c;
  cfg.n = o.n;
  cfg.dt = o.dt;
  cfg.t_final = o.t_final;
  cfg.seed = o.seed;
  cfg.noise = o.noise == "none" ? NoiseMode::None : NoiseMode::Vanishing;
  cfg.record_every = o.every;
  cfg.p = o.p;
  cfg.min_gap_factor = o.min_gap_factor;
  std::vector<double> init;
  try {
    cfg.validate();
    init = parse_initial(o.init, o.n, o.seed, o.c);
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return Exit::usage;
  }

  ConvergenceSeries series;
  std::string trailer;
  try {
    simulate(cfg, std::move(init), series);
  } catch (const SimulationError& e) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", e.time());
    trailer = std::string("# incomplete: ") + e.what() + " at t=" + buf + "\n";
    err << "error: " << e.what() << " at t=" << buf << "\n";
  }
  const int code = emit(o, series.to_csv() + trailer, out, err);
  if (code != Exit::ok) return code;
  if (!trailer.empty()) return Exit::simulation_failed;

  if (summary && !series.empty()) {
    double worst = 0.0;
    const auto& rows = series.rows();
    for (std::size_t i = 1; i < rows.size(); ++i)
      worst = std::max(worst, rows[i].sigma_v - rows[i - 1].sigma_v);
    std::ostream& s = o.out.empty() ? err : out;
    const auto& last = series.back();
    s << "rows " << rows.size() << "\n"
      << "final_t " << last.t << "\n"
      << "final_w1 " << last.w1 << "\n"
      << "final_w2 " << last.w2 << "\n"
      << "final_dissipation " << last.dissipation << "\n"
      << "max_sigma_v_increase " << worst << "\n";
  }
  return Exit::ok;
}

void add_sim_flags(CLI::App* sub, Options& o) {
  sub->add_option("--c", o.c, "Quartic coefficient")->required();
  sub->add_option("--n", o.n, "Particle count")->check(CLI::Range(std::size_t{1}, std::size_t{1} << 20));
  sub->add_option("--dt", o.dt, "Base time step")->check(CLI::Range(1e-12, 0.1));
  sub->add_option("--t-final", o.t_final, "Final time")->check(CLI::NonNegativeNumber);
  sub->add_option("--seed", o.seed, "Noise seed");
  sub->add_option("--init", o.init,
                  "uniform:LO,HI | equilibrium | twopoint:X1,X2,W | file:PATH");
  sub->add_option("--noise", o.noise, "none | vanishing")
      ->check(CLI::IsMember({"none", "vanishing"}));
  sub->add_option("--every", o.every, "Record every k steps")->check(CLI::PositiveNumber);
  sub->add_option("--p", o.p, "Extra Wasserstein order")->check(CLI::Range(1.0, 8.0));
  sub->add_option("--min-gap-factor", o.min_gap_factor, "Largest allowed gap shrink")
      ->check(CLI::Range(1e-6, 0.5));
  sub->add_option("--out", o.out, "CSV destination (stdout if omitted)");
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Free Fokker-Planck toolkit for the quartic potential"};
  app.require_subcommand(1);

  auto* eq = app.add_subcommand("equilibrium", "Equilibrium measure as JSON");
  eq->add_option("--c", o.c, "Quartic coefficient")->required();
  eq->add_option("--grid", o.grid, "Nodes per support interval")
      ->check(CLI::Range(std::size_t{16}, std::size_t{1} << 20));
  eq->add_option("--out", o.out, "JSON destination (stdout if omitted)");

  auto* st = app.add_subcommand("stationary", "Stationary one-interval measures as JSON");
  st->add_option("--c", o.c, "Quartic coefficient")->required();
  st->add_option("--tol", o.tol, "Residual tolerance")->check(CLI::PositiveNumber);
  st->add_option("--out", o.out, "JSON destination (stdout if omitted)");

  auto* cr = app.add_subcommand("critical", "Criticality diagnostics of the equilibrium measure");
  cr->add_option("--c", o.c, "Quartic coefficient")->required();
  cr->add_option("--grid", o.grid, "Nodes per support interval for the residual")
      ->check(CLI::Range(std::size_t{16}, std::size_t{1} << 16));
  cr->add_option("--out", o.out, "JSON destination (stdout if omitted)");

  auto* sim = app.add_subcommand("simulate", "Run the particle system, write the series CSV");
  add_sim_flags(sim, o);
  auto* conv = app.add_subcommand("converge", "Like simulate, plus a convergence summary");
  add_sim_flags(conv, o);

  auto* self = app.add_subcommand("selftest", "Run the invariant suite");
  self->add_flag("--quick", o.quick, "Cheap subset only");

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return Exit::ok;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return Exit::ok;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return Exit::usage;
  }

  try {
    if (eq->parsed()) return cmd_equilibrium(o, out, err);
    if (st->parsed()) return cmd_stationary(o, out, err);
    if (cr->parsed()) return cmd_critical(o, out, err);
    if (sim->parsed()) return cmd_simulate(o, false, out, err);
    if (conv->parsed()) return cmd_simulate(o, true, out, err);
    if (self->parsed()) {
      const auto results = run_selftest(o.quick);
      bool all = true;
      for (const auto& r : results) {
        out << (r.pass ? "PASS  " : "FAIL  ") << r.name << "  " << r.detail << "\n";
        all = all && r.pass;
      }
      return all ? Exit::ok : Exit::selftest_failed;
    }
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return Exit::usage;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << "\n";
    return Exit::usage;
  }
  return Exit::usage;
}

} // namespace freefp::cli
