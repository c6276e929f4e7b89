// herbst-bs: kernels, spectra, threshold expansions and verification suites from the command line.
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <Eigen/Core>
#include <boost/version.hpp>
#include <fmt/format.h>

#include "herbst/error.hpp"
#include "herbst/kernel.hpp"
#include "herbst/spectral.hpp"
#include "herbst/threshold.hpp"
#include "herbst/verify.hpp"
#include "output.hpp"
#include "run_config.hpp"

namespace {
using namespace herbst;
using cli::Result;
using cli::RunConfig;

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitNumerical = 2;
constexpr int kExitVerification = 3;

std::vector<double> log_grid(double lo, double hi, int n) {
  std::vector<double> g;
  for (int i = 0; i < n; ++i) g.push_back(lo * std::pow(hi / lo, double(i) / (n - 1)));
  return g;
}

Result cmd_kernel(const RunConfig& cfg) {
  const auto p = cli::kernel_params(cfg);
  const double c = kernel::h3_root();
  Result r;
  r.scalar("m", p.m);
  r.scalar("E", p.E);
  r.scalar("mu", p.mu);
  r.scalar("c", c);
  r.columns = {"r", "G_E", "envelope_bound", "within"};
  bool all = true;
  for (double x : log_grid(cfg.r_min, cfg.r_max, cfg.rows)) {
    const double g = kernel::green_function(x, p);
    // The envelope grows like 2/mu; at E = 0 it is infinite and trivially satisfied.
    const double bound = p.mu > 0.0 ? kernel::envelope_bound(x, p, c) : INFINITY;
    const bool within = std::abs(g) <= bound;
    all = all && within;
    r.rows.push_back({x, g, bound, within});
  }
  r.scalar("all_within", all);
  return r;
}

Result cmd_spectrum(const RunConfig& cfg) {
  const auto V = cli::make_potential(cfg);
  const auto p = kernel::PhysParams::from_alpha(0.0, cfg.mass);
  const auto g = spectral::gauss_legendre_grid(cfg.grid_n, V.support_radius);
  const auto res = spectral::leading_eigenpair(spectral::s_wave_reduce(V, p, g));
  const auto g2 = spectral::gauss_legendre_grid(2 * cfg.grid_n, V.support_radius);
  const double mu2 = spectral::leading_eigenpair(spectral::s_wave_reduce(V, p, g2)).mu0;
  const double delta = res.mu0 > 0.0 ? std::abs(mu2 - res.mu0) / res.mu0 : std::abs(mu2 - res.mu0);

  Result r;
  r.scalar("mu0", res.mu0);
  r.scalar("lambda0", res.lambda0);
  r.scalar("threshold_defined", res.mu0 > 0.0);
  r.scalar("residual", res.residual);
  r.scalar("gap", res.gap);
  r.scalar("multiplicity", static_cast<long long>(res.multiplicity));
  r.scalar("grid_n", static_cast<long long>(cfg.grid_n));
  r.scalar("mu0_2n", mu2);
  r.scalar("certificate_delta", delta);
  r.columns = {"r", "weight", "phi"};
  for (int i = 0; i < g.size(); ++i) r.rows.push_back({g.nodes[i], g.weights[i], res.phi[i]});
  return r;
}

Result cmd_threshold(const RunConfig& cfg) {
  using namespace threshold;
  const auto V = cli::make_potential(cfg);
  const auto g = spectral::gauss_legendre_grid(cfg.grid_n, V.support_radius);
  const auto L0 = spectral::s_wave_reduce(V, kernel::PhysParams::from_alpha(0.0, cfg.mass), g);
  const auto ground = spectral::leading_eigenpair(L0);
  const auto res = cfg.state == "ground" ? ground : zero_overlap_trial(L0);
  auto e = expansion(res, V, g, cfg.mass, cfg.a_zero_tol);
  const auto bc = coefficient_b(res, V, g, cfg.mass, MomentumMode::finite_part, cfg.a_zero_tol);

  Result r;
  r.scalar("state", cfg.state);
  r.scalar("mu0", e.mu0);
  r.scalar("lambda0", e.lambda0);
  r.scalar("a", e.a);
  r.scalar("b", e.b);
  r.scalar("b_direct", bc.direct);
  r.scalar("b_momentum", bc.momentum);
  r.scalar("b_mixing", bc.mixing);
  if (cfg.state == "ground") {
    std::vector<double> alphas;
    for (int i = 0; i < cfg.alpha_count; ++i) alphas.push_back(cfg.alpha_max * i / (cfg.alpha_count - 1));
    const auto fit = fit_continuation(spectral::eigen_continuation(V, g, alphas, cfg.mass), 6);
    r.scalar("a_continuation", fit.slope);
    r.scalar("b_continuation", fit.half_curv);
    r.scalar("fit_rms", fit.rms);
    attach_cubic(e, fit);
  }
  if (cfg.branch == "a_zero") e.branch = Branch::a_zero;
  r.scalar("c", e.c);
  r.scalar("branch", std::string(e.branch == Branch::a_zero ? "a_zero" : "a_nonzero"));

  r.columns = {"lambda", "alpha", "E"};
  r.rows.push_back({e.lambda0, 0.0, energy_of_lambda(e, e.lambda0)});
  for (int i = 1; i <= cfg.lambda_points; ++i) {
    const double lam = e.lambda0 * (1.0 + 0.2 * i / cfg.lambda_points);
    r.rows.push_back({lam, alpha_of_lambda(e, lam), energy_of_lambda(e, lam)});
  }
  return r;
}

Result cmd_bound(const RunConfig& cfg, bool& ok) {
  const double c = kernel::h3_root();
  Result r;
  r.scalar("m", cfg.mass);
  r.scalar("c", c);
  r.columns = {"mu", "r", "G_E", "envelope_bound", "ratio", "h0", "h1", "h2", "h3"};
  double worst = 0.0;
  for (double nu : {0.1, 0.3, 0.5, 0.7, 0.9}) {
    const auto p = kernel::PhysParams::from_mu(nu * cfg.mass, cfg.mass);
    for (double x : log_grid(cfg.r_min, cfg.r_max, cfg.rows)) {
      const double gx = kernel::green_function(x, p);
      const double bound = kernel::envelope_bound(x, p, c);
      const auto h = kernel::envelope_pieces(x, p);
      worst = std::max(worst, std::abs(gx) / bound);
      r.rows.push_back({p.mu, x, gx, bound, std::abs(gx) / bound, h.h0, h.h1, h.h2, h.h3});
    }
  }
  ok = worst <= 1.0;
  r.scalar("max_ratio", worst);
  r.scalar("holds", ok);
  return r;
}

Result cmd_verify(const RunConfig& cfg, const std::vector<std::string>& suites, bool& ok) {
  verify::SuiteOptions opt;
  opt.m = cfg.mass;
  opt.grid_n = cfg.grid_n;
  opt.potential = cli::make_potential(cfg);
  opt.tol_scale = cfg.tol;
  Result r;
  r.columns = {"suite", "group", "name", "value", "reference", "residual", "tolerance", "passed", "note"};
  ok = true;
  for (const auto& s : suites.empty() ? verify::suite_names() : suites) {
    const auto rep = verify::run_suite(s, opt);
    std::cerr << fmt::format("{:<13} {} ({:.2f} s)\n", s, rep.passed() ? "pass" : "FAIL", rep.seconds);
    r.scalar(s, rep.passed());
    ok = ok && rep.passed();
    for (const auto& c : rep.checks)
      r.rows.push_back({c.suite, c.group, c.name, c.value, c.reference, c.residual, c.tolerance, c.passed, c.note});
  }
  r.scalar("passed", ok);
  return r;
}

nlohmann::ordered_json meta(const RunConfig& cfg, const std::string& command) {
  nlohmann::ordered_json m;
  m["command"] = command;
  m["config"] = cfg.to_json();
  m["versions"] = {{"herbst_bs", HERBST_VERSION},
                   {"eigen", fmt::format("{}.{}.{}", EIGEN_WORLD_VERSION, EIGEN_MAJOR_VERSION, EIGEN_MINOR_VERSION)},
                   {"boost", BOOST_LIB_VERSION},
                   {"fmt", fmt::format("{}", FMT_VERSION)}};
  return m;
}

void emit(const RunConfig& cfg, const std::string& command, const Result& r) {
  const std::string text = cfg.format == "json" ? cli::to_json(r, meta(cfg, command)) : cli::to_csv(r);
  if (cfg.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(cfg.out, std::ios::binary);
  if (!f) throw DomainError("cannot open output file " + cfg.out);
  f << text;
}
}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Birman-Schwinger analysis of the relativistic Herbst operator"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path;
  std::optional<std::string> potential, format, out, state, branch;
  std::optional<double> depth, radius, mass, alpha_max, tol, energy, mu, r_min, r_max, a_zero_tol;
  std::optional<int> grid_n, rows;
  app.add_option("--config", config_path, "YAML file of config fields; flags win")->check(CLI::ExistingFile);
  app.add_option("--potential", potential, "bump | gauss | well | table:PATH");
  app.add_option("--depth", depth, "potential depth (default 1)");
  app.add_option("--radius", radius, "support radius R (default 1)");
  app.add_option("--mass", mass, "mass m (default 1)");
  app.add_option("--grid-n", grid_n, "quadrature nodes (default 200)");
  app.add_option("--alpha-max", alpha_max, "largest alpha of the continuation (default 0.05)");
  app.add_option("--format", format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--out", out, "output path (default stdout)");
  app.add_option("--tol", tol, "scale for the verification tolerances (default 1)");
  app.add_option("--a-zero-tol", a_zero_tol, "relative overlap below which a counts as zero (default 1e-8)");
  app.add_option("--energy", energy, "kernel energy E in (-m, 0]");
  app.add_option("--mu", mu, "kernel Yukawa mass in [0, m), default 0.5");
  app.add_option("--r-min", r_min, "smallest radius of kernel tables");
  app.add_option("--r-max", r_max, "largest radius of kernel tables");
  app.add_option("--rows", rows, "radii per kernel table (default 100)");

  auto* kernel_cmd = app.add_subcommand("kernel", "Green's function and its envelope on a radius grid");
  auto* spectrum_cmd = app.add_subcommand("spectrum", "leading Birman-Schwinger eigenpair at E = 0");
  auto* threshold_cmd = app.add_subcommand("threshold", "threshold coupling, coefficients a and b, E(lambda)");
  threshold_cmd->add_option("--state", state, "ground | zero_overlap")->check(CLI::IsMember({"ground", "zero_overlap"}));
  threshold_cmd->add_option("--branch", branch, "auto | a_zero")->check(CLI::IsMember({"auto", "a_zero"}));
  auto* verify_cmd = app.add_subcommand("verify", "verification suites against independent oracles");
  std::vector<std::string> suites;
  verify_cmd->add_option("suite", suites, "suites to run (default: all)")->check(CLI::IsMember(verify::suite_names()));
  auto* bound_cmd = app.add_subcommand("bound", "check |G| against the pointwise envelope");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitValidation;
  }

  try {
    RunConfig cfg;
    if (!config_path.empty()) cli::load_config(config_path, cfg);
    if (potential) cfg.potential = *potential;
    if (depth) cfg.depth = *depth;
    if (radius) cfg.radius = *radius;
    if (mass) cfg.mass = *mass;
    if (grid_n) cfg.grid_n = *grid_n;
    if (alpha_max) cfg.alpha_max = *alpha_max;
    if (format) cfg.format = *format;
    if (out) cfg.out = *out;
    if (tol) cfg.tol = *tol;
    if (a_zero_tol) cfg.a_zero_tol = *a_zero_tol;
    if (energy) {
      cfg.energy = *energy;
      cfg.mu = NAN;
    }
    if (mu) cfg.mu = *mu;
    if (r_min) cfg.r_min = *r_min;
    if (r_max) cfg.r_max = *r_max;
    if (rows) cfg.rows = *rows;
    if (state) cfg.state = *state;
    if (branch) cfg.branch = *branch;
    cfg.validate();

    int code = kExitOk;
    bool ok = true;
    if (kernel_cmd->parsed()) {
      emit(cfg, "kernel", cmd_kernel(cfg));
    } else if (spectrum_cmd->parsed()) {
      emit(cfg, "spectrum", cmd_spectrum(cfg));
    } else if (threshold_cmd->parsed()) {
      emit(cfg, "threshold", cmd_threshold(cfg));
    } else if (verify_cmd->parsed()) {
      emit(cfg, "verify", cmd_verify(cfg, suites, ok));
      if (!ok) code = kExitVerification;
    } else if (bound_cmd->parsed()) {
      emit(cfg, "bound", cmd_bound(cfg, ok));
      if (!ok) code = kExitVerification;
    }
    return code;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  }
}
