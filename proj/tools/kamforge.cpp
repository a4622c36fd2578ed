// Copyright 2026 The kamforge Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end: solve, sweep, geometry, obstruction, taylor0,
// crosscheck and verify. Artifacts go to <out>.json (plus .csv / .jsonl where
// relevant); failures print an error JSON on stdout and exit with status 2.

#include <omp.h>

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "kamforge/continuation.hpp"
#include "kamforge/error.hpp"
#include "kamforge/frequency.hpp"
#include "kamforge/io.hpp"
#include "kamforge/kam.hpp"
#include "kamforge/obstruction.hpp"
#include "kamforge/operators.hpp"
#include "kamforge/sweep.hpp"
#include "kamforge/verify.hpp"

using namespace kamforge;

namespace {

struct FreqSpec {
  std::optional<double> omega_re;
  double omega_im = 0.0;
  std::optional<double> q_re;
  double q_im = 0.0;

  void add_to(CLI::App* app) {
    auto* o = app->add_option("--omega", omega_re, "Re omega");
    app->add_option("--omega-im", omega_im, "Im omega")->needs(o);
    auto* q = app->add_option("--q-re", q_re, "Re q");
    app->add_option("--q-im", q_im, "Im q")->needs(q);
    o->excludes(q);
  }

  Frequency resolve() const {
    if (omega_re) return Frequency::from_omega({*omega_re, omega_im});
    if (q_re) return Frequency::from_q({*q_re, q_im});
    throw InvalidArgument("give the frequency as --omega or as --q-re");
  }
};

struct Common {
  std::string f = "cos";
  double eps = 0.05;
  double eps_im = 0.0;
  int modes = kDefaultCutoff;
  int workers = 1;
  std::string out;

  void add_to(CLI::App* app, const std::string& default_out, bool with_eps = true,
              bool with_modes = true) {
    out = default_out;
    app->add_option("--f", f, "cos, a series JSON file, or k:re[:im],...")
        ->capture_default_str();
    if (with_eps) {
      app->add_option("--eps", eps, "Re eps")->capture_default_str();
      app->add_option("--eps-im", eps_im, "Im eps");
    }
    if (with_modes)
      app->add_option("--modes", modes, "Fourier cutoff N")->capture_default_str();
    app->add_option("--workers", workers, "worker threads (KAMFORGE_WORKERS wins)")
        ->capture_default_str();
    app->add_option("--out", out, "output path prefix")->capture_default_str();
  }

  cplx eps_value() const { return {eps, eps_im}; }
  int resolved_workers() const { return resolve_workers(workers); }
};

void print_line(const char* key, double v) { std::printf("%s: %.6g\n", key, v); }

void print_line(const char* key, cplx v) {
  std::printf("%s: %.6g%+.6gi\n", key, v.real(), v.imag());
}

void print_history(const std::vector<double>& h) {
  std::printf("residuals:");
  for (double r : h) std::printf(" %.3e", r);
  std::printf("\n");
}

InvariantCurve curve_from_picard(const FourierSeries& f, const Frequency& freq,
                                 cplx eps, const PicardResult& res) {
  const OperatorSet ops(freq, res.u.cutoff());
  InvariantCurve c;
  c.u = res.u;
  c.u_plus = ops.apply(MultiplierKind::kShiftPlus, res.u);
  c.v = res.u - ops.apply(MultiplierKind::kShiftMinus, res.u);
  c.freq = freq;
  c.eps = eps;
  c.f = f;
  c.report = res.report;
  return c;
}

int cmd_solve(const Common& c, const FreqSpec& fs, const std::string& method,
              int max_iters, double tol) {
  const auto f = io::parse_f_spec(c.f);
  const auto freq = fs.resolve();
  InvariantCurve curve;
  if (method == "newton") {
    SolverConfig cfg;
    cfg.cutoff = c.modes;
    cfg.max_iters = max_iters;
    cfg.tol = tol;
    curve = solve_curve(f, freq, c.eps_value(), cfg);
  } else if (method == "picard") {
    PicardConfig cfg;
    cfg.cutoff = c.modes;
    curve = curve_from_picard(f, freq, c.eps_value(),
                              picard_solve(f, freq, c.eps_value(), cfg));
  } else {
    throw InvalidArgument("solve: --method must be newton or picard");
  }
  const double dr = dynamical_residual(curve);
  io::write_text(c.out + ".json", io::dump(io::to_json(curve, dr)));
  io::write_text(c.out + ".csv", io::curve_csv(sample_curve(curve, 1024)));
  print_history(curve.report.residual_history);
  std::printf("iterations: %d\n", curve.report.iterations);
  print_line("dynamical_residual", dr);
  print_line("beta", curve.report.beta);
  print_line("abs_beta", std::abs(curve.report.beta));
  for (const auto& w : curve.report.warnings) std::printf("warning: %s\n", w.c_str());
  std::printf("wrote %s.json %s.csv\n", c.out.c_str(), c.out.c_str());
  return 0;
}

int cmd_sweep(const Common& c, SweepConfig cfg, const std::vector<double>& eps_list) {
  cfg.f = io::parse_f_spec(c.f);
  cfg.solver.cutoff = c.modes;
  cfg.workers = c.resolved_workers();
  cfg.eps_values.clear();
  if (eps_list.empty()) {
    cfg.eps_values.push_back(c.eps_value());
  } else {
    for (double e : eps_list) cfg.eps_values.emplace_back(e, 0.0);
  }
  const auto res = run_sweep(cfg);
  io::write_text(c.out + ".jsonl", sweep_jsonl(res));
  io::write_text(c.out + ".family.json", io::dump(io::to_json(res.family)));
  std::printf("points: %zu\nconverged: %d\n", res.points.size(), res.converged_count);
  std::printf("wrote %s.jsonl %s.family.json\n", c.out.c_str(), c.out.c_str());
  return res.converged_count == 0 && !res.points.empty() ? 2 : 0;
}

int cmd_geometry(const std::string& out, double M, double tau, int mmax,
                 int list_mmax, int boundary_points) {
  const DiophantineClass cls(M, tau, mmax);
  GeometryOptions opt;
  opt.list_m_max = std::min(list_mmax, mmax);
  opt.boundary_points = boundary_points;
  const auto g = export_set_geometry(cls, opt);
  io::write_text(out + ".json", io::dump(io::to_json(g)));
  print_line("total_gap_measure", g.total_gap_measure);
  print_line("measure_bound", g.measure_bound);
  std::printf("listed_gaps: %zu\nwrote %s.json\n", g.gaps.size(), out.c_str());
  return 0;
}

int cmd_obstruction(const Common& c, int p, int m, ObstructionOptions opt) {
  const auto f = io::parse_f_spec(c.f);
  const auto rep = obstruction_order(f, RationalFreq(p, m), opt);
  io::write_text(c.out + ".json", io::dump(io::to_json(rep)));
  if (rep.n_star)
    std::printf("n_star: %d\n", *rep.n_star);
  else
    std::printf("n_star: none up to order %d\n", rep.orders_computed);
  print_line("gamma_engine", rep.gamma_engine);
  print_line("gamma_oracle", rep.gamma_oracle);
  print_line("relative_gap", rep.relative_gap);
  std::printf("betas:");
  for (double b : rep.betas) std::printf(" %.6g", b);
  std::printf("\nwrote %s.json\n", c.out.c_str());
  return 0;
}

int cmd_taylor0(const Common& c, int orders, std::optional<double> q_re, double q_im) {
  const auto f = io::parse_f_spec(c.f);
  const auto data = taylor0_recursion(f, c.eps_value(), orders);
  io::json out = io::to_json(data);
  const double radius = root_test_radius(data);
  out["root_test_radius"] = io::real_to_json(radius);
  print_line("root_test_radius", radius);
  if (q_re) {
    const auto ev = taylor0_eval(data, {*q_re, q_im});
    out["eval"] = {{"q", io::to_json(cplx{*q_re, q_im})},
                   {"u", io::to_json(ev.u)},
                   {"last_term", io::real_to_json(ev.last_term)},
                   {"decaying", ev.decaying}};
    print_line("last_term", ev.last_term);
    if (!ev.decaying) std::printf("warning: terms do not decay geometrically\n");
  }
  io::write_text(c.out + ".json", io::dump(out));
  std::printf("wrote %s.json\n", c.out.c_str());
  return 0;
}

int cmd_crosscheck(const Common& c, const FreqSpec& fs,
                   const std::vector<std::string>& names, int taylor_orders) {
  const auto f = io::parse_f_spec(c.f);
  std::vector<Method> methods;
  for (const auto& n : names) {
    if (n == "newton") methods.push_back(Method::kNewton);
    else if (n == "picard") methods.push_back(Method::kPicard);
    else if (n == "taylor0") methods.push_back(Method::kTaylor0);
    else throw InvalidArgument("crosscheck: unknown method " + n);
  }
  CrosscheckOptions opt;
  opt.newton.cutoff = c.modes;
  opt.picard.cutoff = c.modes;
  opt.taylor_orders = taylor_orders;
  omp_set_num_threads(c.resolved_workers());
  const auto rep = crosscheck(f, fs.resolve(), c.eps_value(), methods, opt);
  io::write_text(c.out + ".json", io::dump(io::to_json(rep)));
  for (const auto& [k, d] : rep.differences) std::printf("%s: %.3e\n", k.c_str(), d);
  for (const auto& [k, n] : rep.notices) std::printf("%s: %s\n", k.c_str(), n.c_str());
  std::printf("wrote %s.json\n", c.out.c_str());
  return 0;
}

int cmd_verify(const std::string& suite, const std::string& out) {
  std::vector<verify::Check> checks;
  if (suite == "all" || suite == "acceptance") {
    auto a = verify::acceptance_checks();
    checks.insert(checks.end(), a.begin(), a.end());
  }
  if (suite == "all" || suite == "properties") {
    auto p = verify::property_checks();
    checks.insert(checks.end(), p.begin(), p.end());
  }
  if (checks.empty())
    throw InvalidArgument("verify: --suite must be all, acceptance or properties");
  const auto results = verify::run(checks);
  std::cout << verify::format(results);
  if (!out.empty()) {
    io::json j = io::json::array();
    for (const auto& r : results)
      j.push_back({{"id", r.id}, {"name", r.name}, {"pass", r.pass},
                   {"detail", r.detail}, {"seconds", r.seconds}});
    io::write_text(out + ".json", io::dump(j));
  }
  const bool ok = verify::all_pass(results);
  std::printf("%s\n", ok ? "all checks passed" : "some checks failed");
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"kamforge: invariant curves of the standard family"};
  app.require_subcommand(1);

  auto* solve = app.add_subcommand("solve", "solve for one invariant curve");
  Common solve_c;
  FreqSpec solve_f;
  std::string method = "newton";
  int max_iters = 30;
  double tol = 1e-12;
  solve_c.add_to(solve, "curve");
  solve_f.add_to(solve);
  solve->add_option("--method", method, "newton or picard")->capture_default_str();
  solve->add_option("--max-iters", max_iters)->capture_default_str();
  solve->add_option("--tol", tol)->capture_default_str();

  auto* sweep = app.add_subcommand("sweep", "solve over a grid of omega");
  Common sweep_c;
  SweepConfig sweep_cfg;
  std::vector<double> eps_list;
  sweep_c.add_to(sweep, "sweep");
  sweep->add_option("--re-lo", sweep_cfg.re_lo)->capture_default_str();
  sweep->add_option("--re-hi", sweep_cfg.re_hi)->capture_default_str();
  sweep->add_option("--re-n", sweep_cfg.re_n)->capture_default_str();
  sweep->add_option("--im-lo", sweep_cfg.im_lo)->capture_default_str();
  sweep->add_option("--im-hi", sweep_cfg.im_hi)->capture_default_str();
  sweep->add_option("--im-n", sweep_cfg.im_n)->capture_default_str();
  sweep->add_option("--eps-list", eps_list, "several real eps values");

  auto* geometry = app.add_subcommand("geometry", "gaps and boundary of K_M");
  double M = 6.0, tau = 0.5;
  int mmax = 10000, list_mmax = 100, boundary_points = 2001;
  std::string geometry_out = "geometry";
  geometry->add_option("--M", M)->capture_default_str();
  geometry->add_option("--tau", tau)->capture_default_str();
  geometry->add_option("--mmax", mmax)->capture_default_str();
  geometry->add_option("--list-mmax", list_mmax, "denominators listed as gaps")
      ->capture_default_str();
  geometry->add_option("--boundary-points", boundary_points)->capture_default_str();
  geometry->add_option("--out", geometry_out)->capture_default_str();

  auto* obstruction = app.add_subcommand("obstruction", "eps-expansion at p/m");
  Common obs_c;
  int p = 1, m = 3;
  ObstructionOptions obs_opt;
  bool extended = false;
  obs_c.add_to(obstruction, "obstruction", false, false);
  obstruction->add_option("--p", p)->capture_default_str();
  obstruction->add_option("--m", m)->capture_default_str();
  obstruction->add_option("--max-order", obs_opt.max_order)->capture_default_str();
  obstruction->add_option("--threshold", obs_opt.threshold)->capture_default_str();
  obstruction->add_flag("--continue-past", obs_opt.continue_past);
  obstruction->add_flag("--extended", extended, "long double recursion");

  auto* taylor = app.add_subcommand("taylor0", "expansion in q at q = 0");
  Common taylor_c;
  int orders = 40;
  std::optional<double> tq_re;
  double tq_im = 0.0;
  taylor_c.add_to(taylor, "taylor0", true, false);
  taylor->add_option("--orders", orders)->capture_default_str();
  auto* tq = taylor->add_option("--q-re", tq_re, "evaluate at q");
  taylor->add_option("--q-im", tq_im)->needs(tq);

  auto* cross = app.add_subcommand("crosscheck", "compare newton, picard, taylor0");
  Common cross_c;
  FreqSpec cross_f;
  std::vector<std::string> methods{"newton", "picard", "taylor0"};
  int taylor_orders = 40;
  cross_c.add_to(cross, "crosscheck");
  cross_f.add_to(cross);
  cross->add_option("--method", methods, "methods to run")->capture_default_str();
  cross->add_option("--taylor-orders", taylor_orders)->capture_default_str();

  auto* ver = app.add_subcommand("verify", "acceptance criteria and invariant suites");
  std::string suite = "all", verify_out;
  ver->add_option("--suite", suite, "all, acceptance or properties")
      ->capture_default_str();
  ver->add_option("--out", verify_out, "also write results to <out>.json");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*solve) return cmd_solve(solve_c, solve_f, method, max_iters, tol);
    if (*sweep) return cmd_sweep(sweep_c, sweep_cfg, eps_list);
    if (*geometry)
      return cmd_geometry(geometry_out, M, tau, mmax, list_mmax, boundary_points);
    if (*obstruction) {
      obs_opt.exactness = extended ? Exactness::kExtended : Exactness::kFloat;
      return cmd_obstruction(obs_c, p, m, obs_opt);
    }
    if (*taylor) return cmd_taylor0(taylor_c, orders, tq_re, tq_im);
    if (*cross) return cmd_crosscheck(cross_c, cross_f, methods, taylor_orders);
    if (*ver) return cmd_verify(suite, verify_out);
  } catch (const std::exception& e) {
    std::cout << io::error_json(e).dump() << "\n";
    return 2;
  }
  return 1;
}
