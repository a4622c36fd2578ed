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

#include "kamforge/io.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include "kamforge/error.hpp"

namespace kamforge::io {

json real_to_json(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x;
}

double real_from_json(const json& j) {
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    throw InvalidArgument("io: unrecognised number '" + s + "'");
  }
  if (!j.is_number()) throw InvalidArgument("io: expected a number");
  return j.get<double>();
}

json to_json(cplx z) {
  return json::array({real_to_json(z.real()), real_to_json(z.imag())});
}

cplx cplx_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2)
    throw InvalidArgument("io: complex values are [re, im] pairs");
  return {real_from_json(j[0]), real_from_json(j[1])};
}

namespace {

json reals(const std::vector<double>& v) {
  json out = json::array();
  for (double x : v) out.push_back(real_to_json(x));
  return out;
}

std::vector<double> reals_from(const json& j) {
  std::vector<double> out;
  for (const auto& x : j) out.push_back(real_from_json(x));
  return out;
}

json cplxs(const std::vector<cplx>& v) {
  json out = json::array();
  for (cplx z : v) out.push_back(to_json(z));
  return out;
}

std::vector<cplx> cplxs_from(const json& j) {
  std::vector<cplx> out;
  for (const auto& x : j) out.push_back(cplx_from_json(x));
  return out;
}

json series_list(const std::vector<FourierSeries>& v) {
  json out = json::array();
  for (const auto& s : v) out.push_back(to_json(s));
  return out;
}

std::vector<FourierSeries> series_list_from(const json& j) {
  std::vector<FourierSeries> out;
  for (const auto& s : j) out.push_back(series_from_json(s));
  return out;
}

}  // namespace

json to_json(const FourierSeries& phi) {
  json coeffs = json::array();
  for (cplx c : phi.coeffs()) coeffs.push_back(to_json(c));
  return {{"N", phi.cutoff()}, {"coeffs", std::move(coeffs)}};
}

FourierSeries series_from_json(const json& j) {
  const int n = j.at("N").get<int>();
  if (n < 0) throw InvalidArgument("io: negative cutoff");
  const auto& c = j.at("coeffs");
  if (c.size() != static_cast<std::size_t>(2 * n + 1))
    throw InvalidArgument("io: coefficient count does not match N");
  return FourierSeries(n, cplxs_from(c));
}

json to_json(const Frequency& freq) {
  if (freq.is_zero()) return {{"kind", "zero"}};
  if (freq.is_infinity()) return {{"kind", "infinity"}};
  return {{"kind", "finite"},
          {"omega", to_json(freq.omega())},
          {"q", to_json(freq.q())},
          {"chart", to_string(freq.chart())}};
}

Frequency frequency_from_json(const json& j) {
  const auto kind = j.at("kind").get<std::string>();
  if (kind == "zero") return Frequency::zero();
  if (kind == "infinity") return Frequency::infinity();
  if (kind != "finite") throw InvalidArgument("io: unknown frequency kind " + kind);
  return Frequency::from_omega(cplx_from_json(j.at("omega")));
}

json to_json(const SolveReport& r) {
  return {{"residual_history", reals(r.residual_history)},
          {"quadratic_fit_slope", real_to_json(r.quadratic_fit_slope)},
          {"beta", to_json(r.beta)},
          {"aliasing_tail", real_to_json(r.aliasing_tail)},
          {"converged", r.converged},
          {"iterations", r.iterations},
          {"max_abs_lambda", real_to_json(r.max_abs_lambda)},
          {"strip_radii", reals(r.strip_radii)},
          {"strip_norms", reals(r.strip_norms)},
          {"warnings", r.warnings}};
}

SolveReport solve_report_from_json(const json& j) {
  SolveReport r;
  r.residual_history = reals_from(j.at("residual_history"));
  r.quadratic_fit_slope = real_from_json(j.at("quadratic_fit_slope"));
  r.beta = cplx_from_json(j.at("beta"));
  r.aliasing_tail = real_from_json(j.at("aliasing_tail"));
  r.converged = j.at("converged").get<bool>();
  r.iterations = j.at("iterations").get<int>();
  r.max_abs_lambda = real_from_json(j.at("max_abs_lambda"));
  r.strip_radii = reals_from(j.at("strip_radii"));
  r.strip_norms = reals_from(j.at("strip_norms"));
  r.warnings = j.at("warnings").get<std::vector<std::string>>();
  return r;
}

json to_json(const InvariantCurve& c, double dynamical_residual) {
  return {{"frequency", to_json(c.freq)},
          {"eps", to_json(c.eps)},
          {"f", to_json(c.f)},
          {"u", to_json(c.u)},
          {"v", to_json(c.v)},
          {"u_plus", to_json(c.u_plus)},
          {"residual_history", reals(c.report.residual_history)},
          {"dynamical_residual", real_to_json(dynamical_residual)},
          {"report", to_json(c.report)}};
}

InvariantCurve curve_from_json(const json& j) {
  InvariantCurve c;
  c.freq = frequency_from_json(j.at("frequency"));
  c.eps = cplx_from_json(j.at("eps"));
  c.f = series_from_json(j.at("f"));
  c.u = series_from_json(j.at("u"));
  c.v = series_from_json(j.at("v"));
  c.u_plus = series_from_json(j.at("u_plus"));
  c.report = solve_report_from_json(j.at("report"));
  return c;
}

json to_json(const SetGeometry& g) {
  json gaps = json::array();
  for (const auto& [lo, hi] : g.gaps)
    gaps.push_back(json::array({real_to_json(lo), real_to_json(hi)}));
  return {{"M", g.M},
          {"tau", g.tau},
          {"m_max", g.m_max},
          {"list_m_max", g.list_m_max},
          {"gaps", std::move(gaps)},
          {"total_gap_measure", real_to_json(g.total_gap_measure)},
          {"measure_bound", real_to_json(g.measure_bound)},
          {"boundary_omega", cplxs(g.boundary_omega)},
          {"boundary_q", cplxs(g.boundary_q)}};
}

SetGeometry geometry_from_json(const json& j) {
  SetGeometry g;
  g.M = j.at("M").get<double>();
  g.tau = j.at("tau").get<double>();
  g.m_max = j.at("m_max").get<int>();
  g.list_m_max = j.at("list_m_max").get<int>();
  for (const auto& p : j.at("gaps"))
    g.gaps.emplace_back(real_from_json(p.at(0)), real_from_json(p.at(1)));
  g.total_gap_measure = real_from_json(j.at("total_gap_measure"));
  g.measure_bound = real_from_json(j.at("measure_bound"));
  g.boundary_omega = cplxs_from(j.at("boundary_omega"));
  g.boundary_q = cplxs_from(j.at("boundary_q"));
  return g;
}

json to_json(const QTaylorData& d) {
  return {{"eps", to_json(d.eps)},
          {"f", to_json(d.f_ref)},
          {"orders", series_list(d.orders)},
          {"support_tails", reals(d.support_tails)}};
}

QTaylorData taylor_from_json(const json& j) {
  QTaylorData d;
  d.eps = cplx_from_json(j.at("eps"));
  d.f_ref = series_from_json(j.at("f"));
  d.orders = series_list_from(j.at("orders"));
  d.support_tails = reals_from(j.at("support_tails"));
  return d;
}

namespace {

const char* exactness_name(Exactness e) {
  return e == Exactness::kExtended ? "extended" : "float";
}

Exactness exactness_from(const std::string& s) {
  if (s == "extended") return Exactness::kExtended;
  if (s == "float") return Exactness::kFloat;
  throw InvalidArgument("io: unknown exactness " + s);
}

}  // namespace

json to_json(const ObstructionReport& r) {
  return {{"p", r.p},
          {"m", r.m},
          {"K", r.K},
          {"A", to_json(r.A)},
          {"reflected", r.reflected},
          {"n_star", r.n_star ? json(*r.n_star) : json(nullptr)},
          {"witness", to_json(r.witness)},
          {"gamma_engine", to_json(r.gamma_engine)},
          {"gamma_oracle", to_json(r.gamma_oracle)},
          {"relative_gap", real_to_json(r.relative_gap)},
          {"orders_computed", r.orders_computed},
          {"kernel_norms", reals(r.kernel_norms)},
          {"scales", reals(r.scales)},
          {"gamma_engine_table", cplxs(r.gamma_engine_table)},
          {"betas", reals(r.betas)},
          {"gammas", cplxs(r.gammas)},
          {"exactness", exactness_name(r.u.exactness)},
          {"u_orders", series_list(r.u.orders)}};
}

ObstructionReport obstruction_from_json(const json& j) {
  ObstructionReport r;
  r.p = j.at("p").get<int>();
  r.m = j.at("m").get<int>();
  r.K = j.at("K").get<int>();
  r.A = cplx_from_json(j.at("A"));
  r.reflected = j.at("reflected").get<bool>();
  if (!j.at("n_star").is_null()) r.n_star = j.at("n_star").get<int>();
  r.witness = series_from_json(j.at("witness"));
  r.gamma_engine = cplx_from_json(j.at("gamma_engine"));
  r.gamma_oracle = cplx_from_json(j.at("gamma_oracle"));
  r.relative_gap = real_from_json(j.at("relative_gap"));
  r.orders_computed = j.at("orders_computed").get<int>();
  r.kernel_norms = reals_from(j.at("kernel_norms"));
  r.scales = reals_from(j.at("scales"));
  r.gamma_engine_table = cplxs_from(j.at("gamma_engine_table"));
  r.betas = reals_from(j.at("betas"));
  r.gammas = cplxs_from(j.at("gammas"));
  r.u.exactness = exactness_from(j.at("exactness").get<std::string>());
  r.u.orders = series_list_from(j.at("u_orders"));
  return r;
}

json to_json(const SampledFamily& fam) {
  json points = json::array();
  for (const auto& p : fam.points) points.push_back(to_json(p));
  json values = json::array();
  for (const auto& v : fam.values) values.push_back(cplxs(v));
  json derivs = json::array();
  for (const auto& d : fam.derivs) derivs.push_back(cplxs(d));
  return {{"points", std::move(points)},
          {"values", std::move(values)},
          {"derivs", std::move(derivs)}};
}

SampledFamily family_from_json(const json& j) {
  SampledFamily fam;
  for (const auto& p : j.at("points")) fam.points.push_back(frequency_from_json(p));
  for (const auto& v : j.at("values")) fam.values.push_back(cplxs_from(v));
  for (const auto& d : j.at("derivs")) fam.derivs.push_back(cplxs_from(d));
  if (fam.values.size() != fam.points.size() ||
      fam.derivs.size() != fam.points.size())
    throw InvalidArgument("io: sampled family arrays differ in length");
  return fam;
}

json to_json(const CrosscheckReport& r) {
  json sols = json::object();
  for (const auto& [name, u] : r.solutions) sols[name] = to_json(u);
  json diffs = json::object();
  for (const auto& [name, d] : r.differences) diffs[name] = real_to_json(d);
  return {{"omega", to_json(r.omega)},
          {"q", to_json(r.q)},
          {"eps", to_json(r.eps)},
          {"solutions", std::move(sols)},
          {"notices", r.notices},
          {"differences", std::move(diffs)}};
}

CrosscheckReport crosscheck_from_json(const json& j) {
  CrosscheckReport r;
  r.omega = cplx_from_json(j.at("omega"));
  r.q = cplx_from_json(j.at("q"));
  r.eps = cplx_from_json(j.at("eps"));
  for (const auto& [name, u] : j.at("solutions").items())
    r.solutions.emplace(name, series_from_json(u));
  r.notices = j.at("notices").get<std::map<std::string, std::string>>();
  for (const auto& [name, d] : j.at("differences").items())
    r.differences.emplace(name, real_from_json(d));
  return r;
}

json error_json(const std::exception& e) {
  json out{{"error", "Error"}, {"message", e.what()}};
  if (const auto* err = dynamic_cast<const Error*>(&e))
    out["error"] = to_string(err->kind());
  if (const auto* nc = dynamic_cast<const NoConvergence*>(&e))
    out["history"] = reals(nc->history());
  if (const auto* res = dynamic_cast<const Resonance*>(&e))
    out["mode"] = res->mode();
  return out;
}

std::string curve_csv(const std::vector<CurveSample>& samples) {
  std::string out = "theta,re_x,im_x,re_y,im_y\n";
  char line[160];
  for (const auto& s : samples) {
    std::snprintf(line, sizeof line, "%.17g,%.17g,%.17g,%.17g,%.17g\n",
                  s.theta, s.x.real(), s.x.imag(), s.y.real(), s.y.imag());
    out += line;
  }
  return out;
}

FourierSeries parse_f_spec(const std::string& spec) {
  if (spec == "cos") return FourierSeries::cosine(1);
  if (std::filesystem::is_regular_file(spec))
    return series_from_json(json::parse(read_text(spec)));
  std::vector<std::pair<int, cplx>> terms;
  int n = 0;
  std::stringstream list(spec);
  std::string item;
  while (std::getline(list, item, ',')) {
    std::vector<std::string> parts;
    std::stringstream fields(item);
    std::string part;
    while (std::getline(fields, part, ':')) parts.push_back(part);
    if (parts.size() < 2 || parts.size() > 3)
      throw InvalidArgument("io: bad term '" + item + "' in f spec (want k:re[:im])");
    try {
      std::size_t used = 0;
      const int k = std::stoi(parts[0], &used);
      if (used != parts[0].size()) throw std::invalid_argument(parts[0]);
      const double re = std::stod(parts[1]);
      const double im = parts.size() == 3 ? std::stod(parts[2]) : 0.0;
      terms.emplace_back(k, cplx{re, im});
      n = std::max(n, std::abs(k));
    } catch (const std::logic_error&) {
      throw InvalidArgument("io: bad number in f spec term '" + item + "'");
    }
  }
  if (terms.empty()) throw InvalidArgument("io: empty f spec");
  FourierSeries f(n);
  for (const auto& [k, c] : terms) f.at(k) += c;
  return f;
}

std::string dump(const json& j) { return j.dump(2); }

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidArgument("io: cannot open " + path + " for writing");
  out << text;
  if (!out) throw InvalidArgument("io: write to " + path + " failed");
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgument("io: cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace kamforge::io
