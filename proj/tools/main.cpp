// Command-line front end: wires the library modules into reproducible
// experiments with config files and CSV/JSON reports.
//
// Exit codes: 0 all asserted invariants pass, 1 invariant failure (report is
// still written), 2 config/usage error.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <limits>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "striplab/config.hpp"
#include "striplab/contact.hpp"
#include "striplab/decay.hpp"
#include "striplab/errors.hpp"
#include "striplab/exact.hpp"
#include "striplab/geometry.hpp"
#include "striplab/report.hpp"
#include "striplab/solver.hpp"
#include "striplab/spectral.hpp"

namespace {

constexpr double kPi = std::numbers::pi;

using striplab::fail;

struct Session {
  std::string out;
  long long seed = 0;
  int threads = 1;
  nlohmann::json report;
  bool ok = true;

  void check(const std::string& name, bool pass) {
    report["checks"][name] = pass;
    ok = ok && pass;
  }
};

std::pair<int, int> parse_grid(const std::string& s) {
  const auto x = s.find('x');
  if (x == std::string::npos)
    fail("BadConfig", "--grid expects NSxNT, got " + s);
  return {std::stoi(s.substr(0, x)), std::stoi(s.substr(x + 1))};
}

std::pair<double, double> parse_pair(const std::string& s, char sep,
                                     const std::string& what) {
  const auto p = s.find(sep);
  if (p == std::string::npos)
    fail("BadConfig", what + " expects two values separated by '" + sep +
                          "', got " + s);
  return {std::stod(s.substr(0, p)), std::stod(s.substr(p + 1))};
}

void run_verify_exact(Session& cli, double eps, const std::string& grid_str,
                      double s_lo, double s_hi) {
  const auto [ns, nt] = parse_grid(grid_str);
  const striplab::FieldGrid g =
      striplab::sample_strip_solution(eps, s_lo, s_hi, ns, nt);
  const auto rep = striplab::cr_residual(
      g, [](const striplab::Vector4& v) {
        return striplab::eval_J_simple({v(0), v(1), v(2), v(3)});
      });
  const double hs = g.hs(), ht = g.ht();

  double comp_max = 0.0;  // strip solution vs half-disk solution composed
  for (int i = 0; i < ns; ++i)
    for (int j = 0; j < nt; ++j) {
      const auto w = striplab::strip_to_halfdisk(g.s(i), g.t(j));
      const auto hd = striplab::halfdisk_solution(eps, w.real(), w.imag());
      const auto st = striplab::strip_solution(eps, g.s(i), g.t(j));
      comp_max = std::max({comp_max, std::abs(hd.tau - st.tau),
                           std::abs(hd.theta - st.theta), std::abs(hd.x - st.x),
                           std::abs(hd.y - st.y)});
    }

  const double energy = striplab::energy_dlambda(g);
  const double energy_exact = 0.5 * eps * eps * kPi;

  auto& j = cli.report;
  j["epsilon"] = eps;
  j["grid"] = grid_str;
  j["residual_max"] = rep.max_norm;
  j["residual_l2"] = rep.l2_norm;
  j["bc_t0_max"] = rep.bc_t0_max;
  j["bc_t1_tau_max"] = rep.bc_t1_tau_max;
  j["bc_t1_surface_max"] = rep.bc_t1_surf_max;
  j["composition_max"] = comp_max;
  j["energy_dlambda"] = energy;
  j["energy_closed_form"] = energy_exact;
  j["energy_error"] = std::abs(energy - energy_exact);

  cli.check("residual_small", rep.max_norm <= 25.0 * (hs * hs + ht * ht));
  cli.check("boundary_conditions",
            std::max({rep.bc_t0_max, rep.bc_t1_tau_max, rep.bc_t1_surf_max}) <=
                1e-12);
  cli.check("composition_identity", comp_max <= 1e-10);
  cli.check("energy_within_quadrature_error",
            std::abs(energy - energy_exact) <=
                std::max(1e-6, 2.0 * eps * eps * (hs * hs + ht * ht)));
}

void run_spectrum(Session& cli, double q0, const std::string& method, int n,
                  const std::string& range_str) {
  const auto [lo, hi] = parse_pair(range_str, ',', "--range");
  const auto op = striplab::make_asymptotic_operator(q0);
  striplab::SpectrumReport rep;
  double tol;
  if (method == "shooting") {
    rep = striplab::spectrum_shooting(op, lo, hi);
    tol = 1e-8;
  } else if (method == "fd") {
    rep = striplab::spectrum_fd(op, n, lo, hi);
    tol = 1e-2 * (200.0 / n) * (200.0 / n);
  } else {
    fail("BadConfig", "--method must be shooting or fd");
  }

  cli.report = striplab::spectrum_report_json(rep);
  // each lattice point k pi/2 in range must be matched by an eigenvalue
  double worst = 0.0;
  for (int k = static_cast<int>(std::ceil(lo / (kPi / 2)));
       k * (kPi / 2) <= hi; ++k) {
    double best = std::numeric_limits<double>::infinity();
    for (double ev : rep.eigenvalues)
      best = std::min(best, std::abs(ev - k * (kPi / 2)));
    worst = std::max(worst, best);
  }
  cli.report["max_lattice_error"] = worst;
  cli.check("half_pi_lattice_covered", worst <= tol);
  if (method == "shooting") {
    bool simple = true;
    for (int m : rep.multiplicities) simple = simple && m == 1;
    cli.check("all_simple", simple);
  }
}

void run_decay(Session& cli, double eps, const std::string& s_range, int nt,
               const std::string& trace_out) {
  const auto [s_lo, s_hi] = parse_pair(s_range, ':', "--s-range");
  const int ns = static_cast<int>(std::lround((s_hi - s_lo) * (nt - 1))) + 1;
  const striplab::FieldGrid g =
      striplab::sample_flattened_strip(eps, s_lo, s_hi, ns, nt);
  const striplab::StructureField f = striplab::flattened_strip_field(eps);

  const striplab::AlphaTrace tr = striplab::alpha_trace(g, f);
  const auto e = striplab::analytic_eigenvector(-kPi / 2, -2.0 / eps, 1.0);
  const striplab::DecayReport rep = striplab::decay_fit(g, f, e);
  const auto conv = striplab::convexity_check(g, f, s_lo + 0.5);
  const double dir_err =
      striplab::eigen_direction_error(g, e, std::min(8.0, s_hi - 1.0));

  cli.report = striplab::decay_report_json(rep);
  cli.report["epsilon"] = eps;
  cli.report["lambda_fit"] = tr.lambda_fit;
  cli.report["direction_error"] = dir_err;
  cli.report["convexity_min_ratio"] = conv.min_ratio;
  cli.report["convexity_envelope_ok"] = conv.envelope_ok;
  if (!trace_out.empty())
    striplab::write_text_file(striplab::alpha_trace_csv(tr), trace_out);

  const double ht = 1.0 / (nt - 1);
  const double hfac = std::max(1.0, (64.0 * ht) * (64.0 * ht));
  cli.check("lambda_is_minus_half_pi",
            std::abs(tr.lambda_fit + kPi / 2) <= 1e-3 * hfac);
  cli.check("alpha_formulas_agree", tr.discrepancy_max <= 1e-4 * hfac);
  cli.check("remainder_rates_positive",
            rep.delta_alpha > 0.0 &&
                (rep.delta_remainder > 0.0 || rep.remainder_below_floor));
  cli.check("asymptotic_direction", dir_err <= 1e-3 * hfac);
  cli.check("convexity", conv.min_ratio >= 0.5 && conv.envelope_ok);
}

void run_solve(Session& cli, const std::string& config_path) {
  const striplab::RunConfig cfg = striplab::load_run_config(config_path);
  const double eps = cfg.get_double("experiment", "epsilon", 0.2);
  const double noise = cfg.get_double("experiment", "noise", 1e-2);
  const double s_lo = cfg.get_double("grid", "s_min", 4.0);
  const double s_hi = cfg.get_double("grid", "s_max", 10.0);
  const int ns = cfg.get_int("grid", "n_s", 120);
  const int nt = cfg.get_int("grid", "n_t", 16);

  striplab::StructureField f = striplab::flattened_strip_field(eps);
  if (cfg.has("chart", "C")) f.C = cfg.get_double("chart", "C");

  striplab::SolverConfig scfg;
  scfg.chart_bound = cfg.get_double("chart", "bound", scfg.chart_bound);
  scfg.max_iterations =
      cfg.get_int("experiment", "max_iterations", scfg.max_iterations);
  scfg.residual_tol =
      cfg.get_double("experiment", "residual_tol", scfg.residual_tol);
  scfg.boundary_weight =
      cfg.get_double("experiment", "boundary_weight", scfg.boundary_weight);

  const striplab::FieldGrid oracle =
      striplab::sample_flattened_strip(eps, s_lo, s_hi, ns, nt);
  striplab::FieldGrid init = oracle;
  std::mt19937_64 rng(static_cast<uint64_t>(cli.seed));
  std::uniform_real_distribution<double> u(-noise, noise);
  for (int i = 1; i < ns - 1; ++i)
    for (int j = 0; j < nt; ++j)
      for (int c = 0; c < 4; ++c) init.at(i, j)(c) += u(rng);

  const striplab::SolveResult res =
      striplab::gauss_newton_solve(init, f, scfg, &oracle);
  double sup_err = 0.0;
  for (size_t k = 0; k < res.grid.values.size(); ++k)
    sup_err = std::max(
        sup_err, (res.grid.values[k] - oracle.values[k]).cwiseAbs().maxCoeff());

  cli.report["epsilon"] = eps;
  cli.report["noise"] = noise;
  cli.report["iterations"] = static_cast<int>(res.log.size());
  cli.report["final_residual"] =
      res.log.empty() ? -1.0 : res.log.back().residual;
  cli.report["converged"] = res.converged;
  cli.report["sup_error_vs_oracle"] = sup_err;

  const std::string dir = cfg.get("output", "directory", "");
  if (!dir.empty()) {
    std::filesystem::create_directories(dir);
    striplab::save_grid_csv(res.grid, dir + "/solution.csv");
    striplab::write_text_file(striplab::solve_log_csv(res.log),
                              dir + "/log.csv");
  }
  cli.check("converged", res.converged);
  cli.check("matches_oracle", sup_err <= 1e-5);
}

void run_tb(Session& cli, const std::string& profile_path) {
  const striplab::SurfaceProfile p = striplab::load_profile_csv(profile_path);
  const int degree = striplab::tb_degree(p, 4096);
  const int plus = striplab::tb_signed_count(p, +1);
  const int minus = striplab::tb_signed_count(p, -1);
  cli.report["degree"] = degree;
  cli.report["signed_count"] = plus;
  cli.report["signed_count_minus"] = minus;
  cli.check("counts_agree", degree == plus && degree == minus);
}

void run_compat(Session& cli, const std::string& config_path) {
  const striplab::RunConfig cfg = striplab::load_run_config(config_path);
  striplab::StructureField f;
  if (cfg.has("profile", "path")) {
    const auto prof = striplab::load_profile_csv(cfg.get("profile", "path"));
    f = striplab::StructureField::from_profile(
        prof, cfg.get_double("chart", "theta_lo", 0.0),
        cfg.get_double("chart", "theta_hi", 1.0));
  } else {
    const double q0 = cfg.get_double("profile", "q0", 0.0);
    f = striplab::StructureField::constant(
        q0, cfg.get_double("chart", "C", 1.0 + 2.0 * q0 * q0));
  }
  if (cfg.has("chart", "C")) f.C = cfg.get_double("chart", "C");

  const int n_points = cfg.get_int("experiment", "n_points", 1000);
  std::mt19937_64 rng(static_cast<uint64_t>(cli.seed));
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::uniform_real_distribution<double> uy(-0.1, 0.1);
  std::vector<striplab::ChartPoint> pts;
  pts.reserve(n_points);
  // x = 0 slice: contains both boundary loci, where the identities are exact
  for (int k = 0; k < n_points; ++k)
    pts.push_back({u(rng), 0.5 * (u(rng) + 1.0), 0.0, uy(rng)});

  const auto rep = striplab::compatibility_report(f, pts);
  cli.report["max_jsq"] = rep.max_jsq;
  cli.report["max_asym"] = rep.max_asym;
  cli.report["max_conj"] = rep.max_conj;
  cli.report["min_eig"] = rep.min_eig;
  cli.report["max_lagrangian"] = rep.max_lagrangian;
  cli.report["n_points"] = n_points;
  cli.check("compatible", rep.pass());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical toolkit for pseudoholomorphic strips near a "
               "Legendrian knot"};
  app.require_subcommand(1);

  Session cli;
  app.add_option("--out", cli.out, "Write the JSON report here (default stdout)");
  app.add_option("--seed", cli.seed, "RNG seed (printed into the report)");
  app.add_option("--threads", cli.threads, "Worker threads (default 1)");

  double eps = 0.2;
  std::string grid_str = "200x20", method = "shooting", range_str = "-7,7";
  std::string s_range = "4.5:10.5", trace_out, config_path, profile_path;
  double q0 = 0.0, s_lo = -6.0, s_hi = 6.0;
  int n = 200, nt = 65;

  auto* ve = app.add_subcommand("verify-exact",
                                "Residual, energy and composition checks for "
                                "the explicit solution family");
  ve->add_option("--epsilon", eps);
  ve->add_option("--grid", grid_str, "NSxNT");
  ve->add_option("--s-min", s_lo);
  ve->add_option("--s-max", s_hi);

  auto* sp = app.add_subcommand("spectrum", "Asymptotic operator spectrum");
  sp->add_option("--q0", q0)->required();
  sp->add_option("--method", method)->check(CLI::IsMember({"shooting", "fd"}));
  sp->add_option("--n", n, "FD nodes");
  sp->add_option("--range", range_str, "LO,HI");

  auto* de = app.add_subcommand("decay", "Decay-rate recovery on the explicit "
                                         "solution");
  de->add_option("--epsilon", eps);
  de->add_option("--s-range", s_range, "A:B");
  de->add_option("--nt", nt);
  de->add_option("--trace-out", trace_out, "Alpha trace CSV path");

  auto* so = app.add_subcommand("solve", "Gauss-Newton strip solver");
  so->add_option("--config", config_path)->required();

  auto* tb = app.add_subcommand("tb", "Thurston-Bennequin number of a profile");
  tb->add_option("--profile", profile_path)->required();

  auto* co = app.add_subcommand("compat", "Compatibility suite for the chart "
                                          "structures");
  co->add_option("--config", config_path)->required();

  for (auto* sub : {ve, sp, de, so, tb, co}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (ve->parsed()) run_verify_exact(cli, eps, grid_str, s_lo, s_hi);
    if (sp->parsed()) run_spectrum(cli, q0, method, n, range_str);
    if (de->parsed()) run_decay(cli, eps, s_range, nt, trace_out);
    if (so->parsed()) run_solve(cli, config_path);
    if (tb->parsed()) run_tb(cli, profile_path);
    if (co->parsed()) run_compat(cli, config_path);
  } catch (const striplab::Error& e) {
    if (e.code() == "BadConfig" || e.code() == "IoFailure") {
      std::fprintf(stderr, "error: %s\n", e.what());
      return 2;
    }
    cli.report["error"] = std::string(e.what());
    cli.ok = false;
  }

  cli.report["seed"] = cli.seed;
  const std::string text = striplab::dump_json(cli.report);
  if (cli.out.empty()) {
    std::fputs(text.c_str(), stdout);
  } else {
    try {
      striplab::write_text_file(text, cli.out);
    } catch (const striplab::Error& e) {
      std::fprintf(stderr, "error: %s\n", e.what());
      return 2;
    }
  }
  return cli.ok ? 0 : 1;
}
