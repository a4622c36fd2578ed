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

#include "kamforge/kam.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "kamforge/error.hpp"
#include "kamforge/fft.hpp"
#include "kamforge/kernels.hpp"

namespace kamforge {

using MK = MultiplierKind;

void SolverConfig::validate() const {
  if (!(tol > 0.0)) throw InvalidArgument("SolverConfig: tol must be > 0");
  if (max_iters < 1) throw InvalidArgument("SolverConfig: max_iters must be >= 1");
  if (cutoff < 1 || cutoff > kHardCutoffCap)
    throw InvalidArgument("SolverConfig: cutoff out of range");
  if (!(R > 0.0 && R < R0))
    throw InvalidArgument("SolverConfig: requires 0 < R < R0");
  if (!(divergence_factor > 1.0))
    throw InvalidArgument("SolverConfig: divergence_factor must be > 1");
  if (warm_start && warm_start_steps < 1)
    throw InvalidArgument("SolverConfig: warm_start_steps must be >= 1");
}

namespace {

FourierSeries one_plus_derivative(const FourierSeries& u) {
  FourierSeries a = fourier::derivative(u);
  a += cplx{1.0};
  return a;
}

FourierSeries fit(const FourierSeries& phi, int cutoff) {
  return fourier::truncate(phi, cutoff).series;
}

// <a b> = sum_k a_k b_{-k}
cplx mean_of_product(const FourierSeries& a, const FourierSeries& b) {
  const int n = std::min(a.cutoff(), b.cutoff());
  cplx s{};
  for (int k = -n; k <= n; ++k) s += a[k] * b[-k];
  return s;
}

struct Residual {
  FourierSeries E;
  FourierSeries g;  // f o (id + u)
  double tail = 0.0;
};

Residual residual(const NewtonState& s, const FourierSeries& f, cplx eps,
                  int cutoff) {
  Residual r;
  auto comp = fourier::compose_id_plus(f, s.u, {.out_cutoff = cutoff});
  r.g = std::move(comp.series);
  r.tail = comp.report.aliasing_tail;
  FourierSeries lap = s.u_plus - 2.0 * s.u + s.u_minus;
  r.E = fit(eps * r.g - lap, cutoff);
  return r;
}

struct Increment {
  FourierSeries h, h_plus, h_minus;
};

Increment increment(const NewtonState& s, const FourierSeries& E,
                    const OperatorSet& ops, double floor) {
  const int n = ops.cutoff();
  const auto A = one_plus_derivative(s.u);
  const auto Ap = one_plus_derivative(s.u_plus);
  const auto Am = one_plus_derivative(s.u_minus);
  const auto sol = linearized_solve_tracked(A, Ap, Am, E, ops, floor);
  return {fourier::product(A, sol.w, n), fourier::product(Ap, sol.w_plus, n),
          fourier::product(Am, sol.w_minus, n)};
}

void add(NewtonState& s, const Increment& inc) {
  s.u += inc.h;
  s.u_plus += inc.h_plus;
  s.u_minus += inc.h_minus;
}

void check_finite(double r, const std::vector<double>& history) {
  if (!std::isfinite(r))
    throw NoConvergence("Newton: residual is not finite", history,
                        ErrorKind::kDivergence);
}

// Nodes and weights of Gauss-Legendre quadrature on [0, 1].
std::pair<std::vector<double>, std::vector<double>> gauss_legendre01(int n) {
  std::vector<double> x(n), w(n);
  for (int i = 0; i < n; ++i) {
    double z = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 1; j <= n; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j - 1.0) * z * p1 - (j - 1.0) * p2) / j;
      }
      dp = n * (z * p0 - p1) / (z * z - 1.0);
      const double dz = p0 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    x[i] = 0.5 * (1.0 - z);
    w[i] = 1.0 / ((1.0 - z * z) * dp * dp);
  }
  return {x, w};
}

std::vector<cplx> eval_on(const FourierSeries& phi, std::span<const cplx> pts) {
  std::vector<cplx> out(pts.size());
  kernels::eval_trig(phi.coeffs(), pts, out);
  return out;
}

double wrap_angle(cplx d) { return std::abs(d - std::nearbyint(d.real())); }

}  // namespace

NewtonState NewtonState::from_u(const FourierSeries& u, const OperatorSet& ops) {
  return {u, ops.apply(MK::kShiftPlus, u), ops.apply(MK::kShiftMinus, u)};
}

FourierSeries error_functional(const FourierSeries& u, const FourierSeries& f,
                               const Frequency& freq, cplx eps) {
  const int n = std::max(u.cutoff(), f.cutoff());
  const OperatorSet ops(freq, n);
  auto comp = fourier::compose_id_plus(f, u, {.out_cutoff = n});
  return eps * comp.series - ops.apply(MK::kDelta, u.extended(n));
}

LinearSolution linearized_solve_tracked(const FourierSeries& A,
                                        const FourierSeries& A_plus,
                                        const FourierSeries& A_minus,
                                        const FourierSeries& E,
                                        const OperatorSet& ops,
                                        double invert_floor) {
  const int n = ops.cutoff();
  const auto alpha =
      fourier::invert_pointwise(fourier::product(A, A_plus), invert_floor, n);
  const auto alpha_minus =
      fourier::invert_pointwise(fourier::product(A_minus, A), invert_floor, n);
  const auto AE = fourier::product(A, E, n);
  const auto psi = ops.apply(MK::kGammaMinus, AE);
  // psi(. - omega) = Gamma(A E)
  const auto psi_minus = ops.apply(MK::kGamma, AE);

  const cplx mean_alpha = alpha.mean();
  if (!(std::abs(mean_alpha) > invert_floor))
    throw NearSingular("linearized_solve: <alpha> vanishes");
  const cplx mu0 = -mean_of_product(alpha, psi) / mean_alpha;

  auto chi = fourier::product(alpha, psi, n);
  chi += mu0 * alpha;
  auto chi_minus = fourier::product(alpha_minus, psi_minus, n);
  chi_minus += mu0 * alpha_minus;

  LinearSolution sol;
  sol.w = ops.apply(MK::kGamma, chi);
  sol.w_plus = ops.apply(MK::kGammaMinus, chi);
  sol.w_minus = ops.apply(MK::kGamma, chi_minus);
  sol.mean_alpha = mean_alpha;
  return sol;
}

FourierSeries linearized_solve(const FourierSeries& A, const FourierSeries& E,
                               const Frequency& freq, double invert_floor,
                               int cutoff) {
  const int in = std::max(A.cutoff(), E.cutoff());
  if (cutoff < 0 || (cutoff > 0 && cutoff < in))
    throw InvalidArgument("linearized_solve: cutoff below the input cutoff");
  const int n = cutoff > 0 ? cutoff : std::max(4 * in, 64);
  const OperatorSet ops(freq, n);
  const auto An = A.extended(n);
  return linearized_solve_tracked(An, ops.apply(MK::kShiftPlus, An),
                                  ops.apply(MK::kShiftMinus, An), E.extended(n),
                                  ops, invert_floor)
      .w;
}

double linearized_defect(const FourierSeries& A, const FourierSeries& E,
                         const FourierSeries& w, const Frequency& freq) {
  const auto Aw = fourier::product(A, w);
  const auto lhs = fourier::product(A, apply(MK::kDelta, Aw, freq)) -
                   fourier::product(Aw, apply(MK::kDelta, A, freq));
  auto rhs = fourier::product(A, E);
  rhs.at(0) = 0.0;
  return fourier::sup_distance(lhs, rhs);
}

double linearized_defect(const FourierSeries& A, const FourierSeries& A_plus,
                         const FourierSeries& A_minus, const FourierSeries& E,
                         const LinearSolution& sol) {
  using fourier::product;
  const auto Aw = product(A, sol.w);
  const auto delta_Aw =
      product(A_plus, sol.w_plus) - 2.0 * Aw + product(A_minus, sol.w_minus);
  const auto delta_A = A_plus - 2.0 * A + A_minus;
  const auto lhs = product(A, delta_Aw) - product(Aw, delta_A);
  auto rhs = product(A, E);
  rhs.at(0) = 0.0;
  return fourier::sup_distance(lhs, rhs);
}

std::pair<FourierSeries, StepReport> newton_step(const FourierSeries& u,
                                                 const FourierSeries& f,
                                                 const Frequency& freq,
                                                 cplx eps) {
  const int n = std::max(u.cutoff(), f.cutoff());
  const OperatorSet ops(freq, n);
  auto state = NewtonState::from_u(u.extended(n), ops);
  const auto r0 = residual(state, f, eps, n);
  add(state, increment(state, r0.E, ops, kInvertFloor));
  const auto r1 = residual(state, f, eps, n);
  StepReport rep;
  rep.residual_before = fourier::sup_norm(r0.E);
  rep.residual_after = fourier::sup_norm(r1.E);
  rep.aliasing_tail = std::max(r0.tail, r1.tail);
  if (rep.residual_after > 10.0 * rep.residual_before)
    throw NoConvergence("newton_step: residual grew more than tenfold",
                        {rep.residual_before, rep.residual_after},
                        ErrorKind::kDivergence);
  return {std::move(state.u), rep};
}

NewtonState normalize(const NewtonState& s) {
  const cplx u0 = s.u.mean();
  const auto shift = FourierSeries::constant(-u0);
  auto move = [&](const FourierSeries& phi) {
    auto out =
        fourier::compose_id_plus(phi, shift, {.out_cutoff = phi.cutoff()}).series;
    out += -u0;
    return out;
  };
  NewtonState out{move(s.u), move(s.u_plus), move(s.u_minus)};
  out.u.at(0) = 0.0;
  return out;
}

double quadratic_fit_slope(const std::vector<double>& history, double floor) {
  std::vector<double> xs, ys;
  for (std::size_t i = 0; i + 1 < history.size(); ++i) {
    if (!(history[i] > 0.0) || !(history[i + 1] > floor)) continue;
    xs.push_back(std::log(history[i]));
    ys.push_back(std::log(history[i + 1]));
  }
  if (xs.size() < 2) return std::numeric_limits<double>::quiet_NaN();
  const double n = static_cast<double>(xs.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
  }
  return sxx > 0.0 ? sxy / sxx : std::numeric_limits<double>::quiet_NaN();
}

namespace {

InvariantCurve run_newton(const FourierSeries& f, const Frequency& freq,
                          cplx eps, const FourierSeries& seed,
                          const SolverConfig& config) {
  const int n = config.cutoff;
  if (f.cutoff() > n) throw InvalidArgument("solve_curve: f exceeds cutoff");
  if (seed.cutoff() > n)
    throw InvalidArgument("solve_curve: seed exceeds cutoff");
  const OperatorSet ops(freq, n);

  SolveReport rep;
  rep.max_abs_lambda = ops.max_abs_lambda();
  if (config.diophantine_class && !in_KM(freq, *config.diophantine_class))
    rep.warnings.push_back("frequency outside K_M (truncated at m_max = " +
                           std::to_string(config.diophantine_class->m_max()) +
                           ")");

  auto state = NewtonState::from_u(seed.extended(n), ops);
  for (int it = 0;; ++it) {
    const auto r = residual(state, f, eps, n);
    rep.aliasing_tail = std::max(rep.aliasing_tail, r.tail);
    const double norm = fourier::sup_norm(r.E);
    rep.residual_history.push_back(norm);
    check_finite(norm, rep.residual_history);
    if (norm <= config.tol) {
      rep.converged = true;
      break;
    }
    if (it > 0) {
      const double prev = rep.residual_history[rep.residual_history.size() - 2];
      if (norm > config.divergence_factor * prev) {
        std::ostringstream msg;
        msg << "Newton diverged at step " << it << ": residual " << prev
            << " -> " << norm << " (max |lambda_k| = " << rep.max_abs_lambda
            << ")";
        throw NoConvergence(msg.str(), rep.residual_history,
                            ErrorKind::kDivergence);
      }
    }
    if (it == config.max_iters) {
      std::ostringstream msg;
      msg << "Newton did not reach tol " << config.tol << " in "
          << config.max_iters << " steps (max |lambda_k| = "
          << rep.max_abs_lambda << ")";
      throw NoConvergence(msg.str(), rep.residual_history);
    }
    add(state, increment(state, r.E, ops, config.invert_floor));
    rep.iterations = it + 1;
  }
  rep.quadratic_fit_slope = quadratic_fit_slope(rep.residual_history);

  state = normalize(state);
  auto comp = fourier::compose_id_plus(f, state.u, {.out_cutoff = n});
  rep.beta = eps * comp.series.mean();
  rep.aliasing_tail = std::max(rep.aliasing_tail, comp.report.aliasing_tail);

  const double r_inf = 0.5 * (config.R + config.R0);
  const double kappa = 0.5 * (config.R0 - r_inf);
  for (int k = 0; k <= rep.iterations; ++k) {
    const double rk = r_inf + std::ldexp(kappa, -k - 1);
    rep.strip_radii.push_back(rk);
    try {
      rep.strip_norms.push_back(fourier::strip_norm_bound(state.u, rk));
    } catch (const OverflowRisk&) {
      rep.strip_norms.push_back(std::numeric_limits<double>::infinity());
    }
  }

  InvariantCurve curve;
  curve.v = state.u - state.u_minus;
  curve.u = std::move(state.u);
  curve.u_plus = std::move(state.u_plus);
  curve.freq = freq;
  curve.eps = eps;
  curve.f = f;
  curve.report = std::move(rep);
  return curve;
}

}  // namespace

InvariantCurve solve_curve_from(const FourierSeries& f, const Frequency& freq,
                                cplx eps, const FourierSeries& seed,
                                const SolverConfig& config) {
  config.validate();
  if (freq.is_special())
    throw InvalidArgument("solve_curve: q = 0 and q = inf carry no curve");
  return run_newton(f, freq, eps, seed, config);
}

InvariantCurve solve_curve(const FourierSeries& f, const Frequency& freq,
                           cplx eps, const SolverConfig& config) {
  config.validate();
  if (!config.warm_start)
    return solve_curve_from(f, freq, eps, FourierSeries(config.cutoff), config);
  FourierSeries seed(config.cutoff);
  InvariantCurve curve;
  for (int j = 1; j <= config.warm_start_steps; ++j) {
    const cplx e = eps * (static_cast<double>(j) / config.warm_start_steps);
    curve = solve_curve_from(f, freq, e, seed, config);
    seed = curve.u;
  }
  curve.report.warnings.push_back("warm start over " +
                                  std::to_string(config.warm_start_steps) +
                                  " eps stages");
  return curve;
}

double dynamical_residual(const InvariantCurve& curve, int grid_n) {
  if (grid_n < 1) throw InvalidArgument("dynamical_residual: grid_n < 1");
  const auto& freq = curve.freq;
  const cplx omega = freq.omega();
  const bool real = omega.imag() == 0.0;
  const auto n = static_cast<std::size_t>(grid_n);

  std::vector<cplx> theta(n), theta_next(n);
  for (std::size_t j = 0; j < n; ++j) {
    theta[j] = static_cast<double>(j) / static_cast<double>(grid_n);
    theta_next[j] = theta[j] + omega;
  }
  const auto u = eval_on(curve.u, theta);
  const auto v = eval_on(curve.v, theta);
  std::vector<cplx> u_next, v_next;
  if (real) {
    u_next = eval_on(curve.u, theta_next);
    v_next = eval_on(curve.v, theta_next);
  } else {
    // u(theta + omega) is the tracked shift; v(theta + omega) = u^+ - u.
    u_next = eval_on(curve.u_plus, theta);
    v_next.resize(n);
    for (std::size_t j = 0; j < n; ++j) v_next[j] = u_next[j] - u[j];
  }

  std::vector<cplx> x(n);
  double max_im = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    x[j] = theta[j] + u[j];
    max_im = std::max(max_im, std::abs(x[j].imag()));
  }
  if (kTwoPi * curve.f.degree() * max_im > kExponentCap)
    throw OverflowRisk("dynamical_residual: curve leaves the exponent cap");
  const auto fx = eval_on(curve.f, x);

  double worst = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const cplx y = omega + v[j];
    const cplx x1 = x[j] + y + curve.eps * fx[j];
    const cplx y1 = y + curve.eps * fx[j];
    const cplx gx = theta_next[j] + u_next[j];
    const cplx gy = omega + v_next[j];
    worst = std::max({worst, wrap_angle(gx - x1), std::abs(gy - y1)});
  }
  return worst;
}

double mean_identity_residual(const FourierSeries& u, const FourierSeries& f,
                              const Frequency& freq, cplx eps) {
  // Only modes |k| <= n of E enter the mean, but rough u folds high modes of
  // f o (id + u) onto them; refine the grid until the mean settles.
  const int n = std::max(u.cutoff(), f.cutoff());
  const OperatorSet ops(freq, n);
  const auto A = one_plus_derivative(u);
  const auto du = ops.apply(MK::kDelta, u.extended(n));
  auto mean_at = [&](int grid) {
    const auto comp =
        fourier::compose_id_plus(f, u, {.out_cutoff = n, .min_grid = grid});
    return mean_of_product(A, eps * comp.series - du);
  };
  int grid = 4 * n;
  cplx prev = mean_at(grid);
  while (grid < 4 * kHardCutoffCap) {
    grid *= 2;
    const cplx next = mean_at(grid);
    const bool settled = std::abs(next - prev) <= 1e-3 * std::abs(next) + 1e-17;
    prev = next;
    if (settled) break;
  }
  return std::abs(prev);
}

double factorization_defect(const FourierSeries& A, const FourierSeries& h,
                            const Frequency& freq) {
  const int n = std::max(A.cutoff(), h.cutoff());
  const int wide = 4 * n + 64;
  const auto h_over_A =
      fourier::product(h, fourier::invert_pointwise(A, kInvertFloor, wide), wide);
  const auto Ap = apply(MK::kShiftPlus, A, freq);
  const auto AAp = fourier::product(A, Ap);
  const auto rhs = apply(
      MK::kNablaMinus,
      fourier::product(AAp, apply(MK::kNabla, h_over_A, freq)), freq);
  const auto lhs = fourier::product(A, apply(MK::kDelta, h, freq)) -
                   fourier::product(h, apply(MK::kDelta, A, freq));
  return fourier::sup_distance(lhs, fit(rhs, lhs.cutoff()));
}

std::pair<double, double> step_residual_defect(const FourierSeries& u,
                                               const FourierSeries& f,
                                               const Frequency& freq,
                                               cplx eps) {
  const int n = std::max(u.cutoff(), f.cutoff());
  const OperatorSet ops(freq, n);
  auto state = NewtonState::from_u(u.extended(n), ops);
  const auto r0 = residual(state, f, eps, n);
  const auto inc = increment(state, r0.E, ops, kInvertFloor);
  add(state, inc);
  const auto r1 = residual(state, f, eps, n);

  const std::size_t grid = fft::next_pow2(static_cast<std::size_t>(4 * n));
  const auto E1 = fourier::to_grid(r1.E, grid);
  const auto dE0 = fourier::to_grid(fourier::derivative(r0.E), grid);
  const auto h = fourier::to_grid(inc.h, grid);
  const auto A = fourier::to_grid(one_plus_derivative(u.extended(n)), grid);
  const auto ug = fourier::to_grid(u.extended(n), grid);
  const auto f2 = fourier::derivative(f, 2);

  const auto [nodes, weights] = gauss_legendre01(16);
  std::vector<cplx> Q(grid);
  std::vector<cplx> pts(grid);
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    for (std::size_t j = 0; j < grid; ++j)
      pts[j] = static_cast<double>(j) / static_cast<double>(grid) + ug[j] +
               nodes[i] * h[j];
    const auto vals = eval_on(f2, pts);
    for (std::size_t j = 0; j < grid; ++j)
      Q[j] += weights[i] * (1.0 - nodes[i]) * vals[j];
  }
  double defect = 0.0;
  for (std::size_t j = 0; j < grid; ++j) {
    const cplx q = eps * Q[j] * h[j] * h[j];
    defect = std::max(defect, std::abs(E1[j] - h[j] / A[j] * dE0[j] - q));
  }
  return {defect, fourier::sup_norm(r0.E)};
}

std::vector<CurveSample> sample_curve(const InvariantCurve& curve, int n) {
  if (n < 1) throw InvalidArgument("sample_curve: n < 1");
  std::vector<cplx> theta(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) theta[j] = static_cast<double>(j) / n;
  const auto u = eval_on(curve.u, theta);
  const auto v = eval_on(curve.v, theta);
  const cplx omega = curve.freq.omega();
  std::vector<CurveSample> out;
  out.reserve(theta.size());
  for (std::size_t j = 0; j < theta.size(); ++j)
    out.push_back({theta[j].real(), theta[j] + u[j], omega + v[j]});
  return out;
}

}  // namespace kamforge
