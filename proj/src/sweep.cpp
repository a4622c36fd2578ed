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

#include "kamforge/sweep.hpp"

#include <cstdlib>
#include <string>

#include "kamforge/error.hpp"
#include "kamforge/io.hpp"

namespace kamforge {

void SweepConfig::validate() const {
  if (re_n < 1 || im_n < 1)
    throw InvalidArgument("sweep: grid sizes must be positive");
  if (eps_values.empty()) throw InvalidArgument("sweep: no eps values");
  if (workers < 1) throw InvalidArgument("sweep: workers must be >= 1");
  solver.validate();
}

int resolve_workers(int requested) {
  if (const char* env = std::getenv("KAMFORGE_WORKERS")) {
    char* end = nullptr;
    const long n = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && n > 0) return static_cast<int>(n);
  }
  return requested;
}

namespace {

double grid_value(double lo, double hi, int n, int i) {
  return n == 1 ? lo : lo + (hi - lo) * i / (n - 1);
}

SweepPoint solve_point(const SweepConfig& cfg, int index) {
  const int per_eps = cfg.re_n * cfg.im_n;
  const int e = index / per_eps;
  const int i_im = (index % per_eps) / cfg.re_n;
  const int i_re = index % cfg.re_n;
  SweepPoint pt;
  pt.index = index;
  pt.omega = {grid_value(cfg.re_lo, cfg.re_hi, cfg.re_n, i_re),
              grid_value(cfg.im_lo, cfg.im_hi, cfg.im_n, i_im)};
  pt.eps = cfg.eps_values[static_cast<std::size_t>(e)];
  try {
    auto curve = solve_curve(cfg.f, Frequency::from_omega(pt.omega), pt.eps,
                             cfg.solver);
    pt.dynamical_residual = dynamical_residual(curve);
    pt.converged = curve.report.converged;
    pt.curve = std::move(curve);
  } catch (const Error& err) {
    pt.error_kind = to_string(err.kind());
    pt.error_message = err.what();
    if (const auto* nc = dynamic_cast<const NoConvergence*>(&err))
      pt.error_history = nc->history();
  } catch (const std::exception& err) {
    pt.error_kind = "Error";
    pt.error_message = err.what();
  }
  return pt;
}

// d/dq from neighbours along Re omega: d/domega = 2 pi i q d/dq.
SampledFamily build_family(const SweepConfig& cfg,
                           const std::vector<SweepPoint>& pts) {
  SampledFamily fam;
  auto at = [&](int i_im, int i_re) -> const SweepPoint* {
    if (i_re < 0 || i_re >= cfg.re_n) return nullptr;
    const auto& p = pts[static_cast<std::size_t>(i_im * cfg.re_n + i_re)];
    return p.converged ? &p : nullptr;
  };
  auto values = [](const SweepPoint& p) {
    const auto c = p.curve->u.coeffs();
    return std::vector<cplx>(c.begin(), c.end());
  };
  const double h = cfg.re_n > 1 ? (cfg.re_hi - cfg.re_lo) / (cfg.re_n - 1) : 0.0;
  if (h == 0.0) return fam;
  for (int i_im = 0; i_im < cfg.im_n; ++i_im)
    for (int i_re = 0; i_re < cfg.re_n; ++i_re) {
      const SweepPoint* c = at(i_im, i_re);
      if (!c) continue;
      const SweepPoint* l = at(i_im, i_re - 1);
      const SweepPoint* r = at(i_im, i_re + 1);
      if (!l && !r) continue;
      const auto vc = values(*c);
      std::vector<cplx> lo = l ? values(*l) : vc;
      std::vector<cplx> hi = r ? values(*r) : vc;
      const double span = h * ((l ? 1 : 0) + (r ? 1 : 0));
      const Frequency freq = Frequency::from_omega(c->omega);
      const cplx dq_domega = kTwoPi * kI * freq.q();
      std::vector<cplx> d(vc.size());
      for (std::size_t k = 0; k < vc.size(); ++k)
        d[k] = (hi[k] - lo[k]) / span / dq_domega;
      fam.points.push_back(freq);
      fam.values.push_back(vc);
      fam.derivs.push_back(std::move(d));
    }
  return fam;
}

}  // namespace

SweepResult run_sweep(const SweepConfig& config) {
  config.validate();
  const int total =
      config.re_n * config.im_n * static_cast<int>(config.eps_values.size());
  SweepResult res;
  res.points.resize(static_cast<std::size_t>(total));
#pragma omp parallel for schedule(dynamic) num_threads(config.workers)
  for (int i = 0; i < total; ++i)
    res.points[static_cast<std::size_t>(i)] = solve_point(config, i);
  for (const auto& p : res.points) res.converged_count += p.converged ? 1 : 0;
  res.family = build_family(config, res.points);
  return res;
}

std::string sweep_jsonl(const SweepResult& result) {
  std::string out;
  for (const auto& p : result.points) {
    io::json rec{{"index", p.index},
                 {"omega", io::to_json(p.omega)},
                 {"eps", io::to_json(p.eps)},
                 {"converged", p.converged}};
    if (p.curve) {
      rec["iterations"] = p.curve->report.iterations;
      rec["residual_history"] = io::to_json(p.curve->report).at("residual_history");
      rec["dynamical_residual"] = io::real_to_json(p.dynamical_residual);
      rec["beta"] = io::to_json(p.curve->report.beta);
      rec["u"] = io::to_json(p.curve->u);
    } else {
      io::json hist = io::json::array();
      for (double x : p.error_history) hist.push_back(io::real_to_json(x));
      rec["error"] = {{"kind", p.error_kind},
                      {"message", p.error_message},
                      {"history", std::move(hist)}};
    }
    out += rec.dump();
    out += '\n';
  }
  return out;
}

}  // namespace kamforge
