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

#include "kamforge/continuation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "kamforge/error.hpp"
#include "kamforge/operators.hpp"

namespace kamforge {

const char* to_string(Method m) {
  switch (m) {
    case Method::kNewton: return "newton";
    case Method::kPicard: return "picard";
    case Method::kTaylor0: return "taylor0";
  }
  return "unknown";
}

PicardResult picard_solve(const FourierSeries& f, const Frequency& freq,
                          cplx eps, const PicardConfig& config) {
  if (!(config.damping > 0.0 && config.damping <= 1.0))
    throw InvalidArgument("picard_solve: damping must lie in (0, 1]");
  if (config.cutoff < f.cutoff())
    throw InvalidArgument("picard_solve: f exceeds cutoff");
  if (!freq.is_special()) {
    const double abs_q = std::exp(-freq.log_scale());
    if (std::abs(abs_q - 1.0) < config.circle_margin) {
      std::ostringstream msg;
      msg << "picard_solve: | |q| - 1 | = " << std::abs(abs_q - 1.0)
          << " is below the margin " << config.circle_margin;
      throw InvalidArgument(msg.str());
    }
  }
  const int n = config.cutoff;
  const OperatorSet ops(freq, n);
  const double lam = config.damping;

  PicardResult res;
  res.report.max_abs_lambda = ops.max_abs_lambda();
  FourierSeries u(n);
  for (int it = 1; it <= config.max_iters; ++it) {
    auto comp = fourier::compose_id_plus(f, u, {.out_cutoff = n});
    res.report.aliasing_tail =
        std::max(res.report.aliasing_tail, comp.report.aliasing_tail);
    FourierSeries next = eps * ops.apply(MultiplierKind::kEq, comp.series);
    if (lam != 1.0) next = (1.0 - lam) * u + lam * next;
    const double diff = fourier::sup_distance(next, u);
    res.report.residual_history.push_back(diff);
    res.report.iterations = it;
    u = std::move(next);
    if (!std::isfinite(diff))
      throw NoConvergence("picard_solve: iterate is not finite",
                          res.report.residual_history, ErrorKind::kDivergence);
    if (diff < config.tol) {
      res.report.converged = true;
      break;
    }
  }
  if (!res.report.converged) {
    std::ostringstream msg;
    msg << "picard_solve: no contraction to tol " << config.tol << " in "
        << config.max_iters << " iterations";
    throw NoConvergence(msg.str(), res.report.residual_history);
  }
  auto comp = fourier::compose_id_plus(f, u, {.out_cutoff = n});
  res.report.beta = eps * comp.series.mean();
  res.report.quadratic_fit_slope = std::numeric_limits<double>::quiet_NaN();
  res.u = std::move(u);
  return res;
}

namespace {

// f^{(r)} / r! for r = 0..r_max.
std::vector<FourierSeries> scaled_derivatives(const FourierSeries& f, int r_max) {
  std::vector<FourierSeries> out;
  out.push_back(f);
  for (int r = 1; r <= r_max; ++r) {
    FourierSeries d = out.back();
    for (int k = -f.cutoff(); k <= f.cutoff(); ++k)
      d.at(k) *= cplx{0.0, kTwoPi * k} / static_cast<double>(r);
    out.push_back(std::move(d));
  }
  return out;
}

FourierSeries add_into(FourierSeries acc, const FourierSeries& term) {
  acc += term;
  return acc;
}

}  // namespace

QTaylorData taylor0_recursion(const FourierSeries& f, cplx eps, int n_q) {
  if (n_q < 1 || n_q > kTaylorOrderCap) {
    std::ostringstream msg;
    msg << "taylor0_recursion: orders must lie in [1, " << kTaylorOrderCap << "]";
    throw InvalidArgument(msg.str());
  }
  QTaylorData data;
  data.eps = eps;
  data.f_ref = f;
  const auto fr = scaled_derivatives(f, n_q);

  // P[s][r]: coefficient of q^s in U^r, U = sum_n u_n q^n (r <= s).
  std::vector<std::vector<FourierSeries>> P(static_cast<std::size_t>(n_q + 1));
  // G[s]: coefficient of q^s in f o (id + U).
  std::vector<FourierSeries> G;
  G.push_back(f);

  for (int n = 1; n <= n_q; ++n) {
    FourierSeries un(0);
    for (int n0 = 1; n0 <= n; ++n0) un = add_into(un, e_n(G[n - n0], n0));
    auto cut = fourier::truncate(un, n);
    data.support_tails.push_back(cut.tail);
    un = std::move(cut.series);
    un *= eps;
    data.orders.push_back(un);
    if (n == n_q) break;

    auto& Pn = P[static_cast<std::size_t>(n)];
    Pn.resize(static_cast<std::size_t>(n + 1));
    Pn[1] = un;
    for (int r = 2; r <= n; ++r) {
      FourierSeries acc(0);
      for (int j = 1; j <= n - r + 1; ++j)
        acc = add_into(acc, fourier::product_direct(
                                data.orders[static_cast<std::size_t>(j - 1)],
                                P[static_cast<std::size_t>(n - j)]
                                 [static_cast<std::size_t>(r - 1)]));
      Pn[static_cast<std::size_t>(r)] = std::move(acc);
    }
    FourierSeries gn(0);
    for (int r = 1; r <= n; ++r)
      gn = add_into(gn, fourier::product_direct(fr[static_cast<std::size_t>(r)],
                                                Pn[static_cast<std::size_t>(r)]));
    G.push_back(std::move(gn));
  }
  return data;
}

TaylorEval taylor0_eval(const QTaylorData& data, cplx q) {
  if (!(std::abs(q) < 1.0))
    throw InvalidArgument("taylor0_eval: requires |q| < 1");
  const int n_q = static_cast<int>(data.orders.size());
  TaylorEval out;
  out.u = FourierSeries(n_q);
  cplx qn = 1.0;
  for (int n = 1; n <= n_q; ++n) {
    qn *= q;
    const FourierSeries term = qn * data.orders[static_cast<std::size_t>(n - 1)];
    out.term_norms.push_back(term.l1_norm());
    out.u += term;
  }
  if (!out.term_norms.empty()) {
    out.last_term = out.term_norms.back();
    out.decaying =
        out.term_norms.size() < 4 ||
        out.term_norms.back() <= out.term_norms[out.term_norms.size() / 2];
  }
  return out;
}

FourierSeries inverse_scattering(const QTaylorData& data) {
  const int n_q = static_cast<int>(data.orders.size());
  FourierSeries out(n_q);
  for (int k = 1; k <= n_q; ++k) {
    const auto& uk = data.orders[static_cast<std::size_t>(k - 1)];
    out.at(k) = uk[k];
    out.at(-k) = uk[-k];
  }
  return out;
}

double root_test_radius(const QTaylorData& data) {
  const int n_q = static_cast<int>(data.orders.size());
  double best = 0.0;
  for (int n = std::max(1, n_q / 2); n <= n_q; ++n) {
    const double norm = data.orders[static_cast<std::size_t>(n - 1)].l1_norm();
    if (norm > 0.0) best = std::max(best, std::pow(norm, 1.0 / n));
  }
  return best;
}

namespace {

FourierSeries zero_mean(FourierSeries u) {
  u.at(0) = 0.0;
  return u;
}

}  // namespace

CrosscheckReport crosscheck(const FourierSeries& f, const Frequency& freq,
                            cplx eps, const std::vector<Method>& methods,
                            const CrosscheckOptions& options) {
  CrosscheckReport rep;
  if (!freq.is_special()) rep.omega = freq.omega();
  rep.q = freq.q();
  rep.eps = eps;

  const auto n = static_cast<std::ptrdiff_t>(methods.size());
  std::vector<std::optional<FourierSeries>> sols(methods.size());
  std::vector<std::string> notes(methods.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    try {
      switch (methods[i]) {
        case Method::kNewton:
          sols[i] = solve_curve(f, freq, eps, options.newton).u;
          break;
        case Method::kPicard: {
          const bool near_circle =
              !freq.is_special() &&
              std::abs(std::exp(-freq.log_scale()) - 1.0) <
                  options.picard.circle_margin;
          if (near_circle)
            notes[i] = "skipped: |q| is within the Picard margin of the unit circle";
          else
            sols[i] = picard_solve(f, freq, eps, options.picard).u;
          break;
        }
        case Method::kTaylor0:
          if (freq.chart() != Chart::kInner || freq.log_scale() <= 0.0)
            notes[i] = "skipped: the expansion at q = 0 needs |q| < 1";
          else
            sols[i] = taylor0_eval(
                          taylor0_recursion(f, eps, options.taylor_orders),
                          freq.q())
                          .u;
          break;
      }
    } catch (const std::exception& e) {
      notes[i] = std::string("failed: ") + e.what();
    }
  }
  for (std::size_t i = 0; i < methods.size(); ++i) {
    const std::string name = to_string(methods[i]);
    if (sols[i]) rep.solutions.emplace(name, zero_mean(*sols[i]));
    if (!notes[i].empty()) rep.notices.emplace(name, notes[i]);
  }
  for (auto a = rep.solutions.begin(); a != rep.solutions.end(); ++a)
    for (auto b = std::next(a); b != rep.solutions.end(); ++b)
      rep.differences[a->first + "|" + b->first] =
          fourier::sup_distance(a->second, b->second);
  return rep;
}

double conjugate_reflection_check(const FourierSeries& f, const Frequency& freq,
                                  double eps, const SolverConfig& config) {
  for (int k = 0; k <= f.cutoff(); ++k)
    if (std::abs(std::conj(f[k]) - f[-k]) > 0.0)
      throw InvalidArgument(
          "conjugate_reflection_check: f must satisfy conj(f_k) = f_{-k}");
  const auto a = solve_curve(f, freq, eps, config).u;
  const auto b = solve_curve(f, freq.reflected(), eps, config).u;
  double worst = 0.0;
  const int n = std::max(a.cutoff(), b.cutoff());
  for (int k = -n; k <= n; ++k)
    worst = std::max(worst, std::abs(std::conj(a[k]) - b[-k]));
  return worst;
}

}  // namespace kamforge
