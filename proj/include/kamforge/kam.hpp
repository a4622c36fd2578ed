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

#pragma once

// Invariant curves gamma(theta) = (theta + u, omega + v) of the standard family
//   T_eps(x, y) = (x + y + eps f(x), y + eps f(x))
// via the Levi-Moser modified Newton scheme on the error functional
//   E(u) = -Delta u + eps f o (id + u).

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "kamforge/fourier.hpp"
#include "kamforge/frequency.hpp"
#include "kamforge/operators.hpp"

namespace kamforge {

struct SolverConfig {
  double tol = 1e-12;  // sup-norm of E(u)
  int max_iters = 30;
  int cutoff = kDefaultCutoff;
  // Strip widths for the logged R_n schedule, 0 < R < R0.
  double R0 = 0.1;
  double R = 0.05;
  // Abort when the residual grows by this factor in one step.
  double divergence_factor = 10.0;
  double invert_floor = kInvertFloor;
  // Continuation in eps: solve at eps * j / warm_start_steps, j = 1.., each
  // seeded by the previous solution.
  bool warm_start = false;
  int warm_start_steps = 4;
  // Used only for the in_KM warning.
  std::optional<DiophantineClass> diophantine_class;

  void validate() const;
};

struct SolveReport {
  std::vector<double> residual_history;
  double quadratic_fit_slope = 0.0;  // NaN when fewer than two usable pairs
  cplx beta{};                        // eps <f o (id + u)>
  double aliasing_tail = 0.0;         // max over the run
  bool converged = false;
  int iterations = 0;
  double max_abs_lambda = 0.0;
  // strip_norm_bound(u, R_n) for R_n = R_inf + 2^{-n-1} kappa.
  std::vector<double> strip_radii;
  std::vector<double> strip_norms;
  std::vector<std::string> warnings;
};

struct InvariantCurve {
  FourierSeries u;
  FourierSeries v;       // u - u(. - omega)
  FourierSeries u_plus;  // u(. + omega)
  Frequency freq = Frequency::from_omega(0.0);
  cplx eps{};
  FourierSeries f;
  SolveReport report;
};

// u together with its shifts u(. +- omega). Tracking the shifts directly keeps
// every operator in the iteration bounded when |Im omega| N is large.
struct NewtonState {
  FourierSeries u;
  FourierSeries u_plus;
  FourierSeries u_minus;

  static NewtonState from_u(const FourierSeries& u, const OperatorSet& ops);
};

struct LinearSolution {
  FourierSeries w;
  FourierSeries w_plus;
  FourierSeries w_minus;
  cplx mean_alpha{};
};

FourierSeries error_functional(const FourierSeries& u, const FourierSeries& f,
                               const Frequency& freq, cplx eps);

// The unique zero-mean w with A Delta(A w) - (A w) Delta A = A E - <A E>,
// resolved on modes |k| <= cutoff (0 picks max(4 n, 64) for inputs of cutoff n).
FourierSeries linearized_solve(const FourierSeries& A, const FourierSeries& E,
                               const Frequency& freq,
                               double invert_floor = kInvertFloor,
                               int cutoff = 0);

// Same solve with A^+ = A(. + omega), A^- = A(. - omega) supplied; also returns
// the shifts of w. All series are kept at ops.cutoff().
LinearSolution linearized_solve_tracked(const FourierSeries& A,
                                        const FourierSeries& A_plus,
                                        const FourierSeries& A_minus,
                                        const FourierSeries& E,
                                        const OperatorSet& ops,
                                        double invert_floor = kInvertFloor);

// sup |A Delta(A w) - (A w) Delta A - (A E - <A E>)| on the grid.
double linearized_defect(const FourierSeries& A, const FourierSeries& E,
                         const FourierSeries& w, const Frequency& freq);

// Same defect with Delta(A w) = A^+ w^+ - 2 A w + A^- w^- taken from the
// tracked shifts, which stays bounded when |Im omega| N is large.
double linearized_defect(const FourierSeries& A, const FourierSeries& A_plus,
                         const FourierSeries& A_minus, const FourierSeries& E,
                         const LinearSolution& sol);

struct StepReport {
  double residual_before = 0.0;
  double residual_after = 0.0;
  double aliasing_tail = 0.0;
};

// One modified Newton step u -> u + A F(A, E(u)).
std::pair<FourierSeries, StepReport> newton_step(const FourierSeries& u,
                                                 const FourierSeries& f,
                                                 const Frequency& freq, cplx eps);

InvariantCurve solve_curve(const FourierSeries& f, const Frequency& freq,
                           cplx eps, const SolverConfig& config = {});

// Continues from a given state instead of u = 0.
InvariantCurve solve_curve_from(const FourierSeries& f, const Frequency& freq,
                                cplx eps, const FourierSeries& seed,
                                const SolverConfig& config = {});

// max over grid_n real theta of the componentwise |gamma(theta + omega) -
// T_eps(gamma(theta))|, angles compared modulo 1.
double dynamical_residual(const InvariantCurve& curve, int grid_n = 1024);

// |<(1 + u') E(u)>|, which vanishes for every u when <f> = 0.
double mean_identity_residual(const FourierSeries& u, const FourierSeries& f,
                              const Frequency& freq, cplx eps);

// sup |A Delta h - h Delta A - nabla^-( A A^+ nabla(h / A) )|.
double factorization_defect(const FourierSeries& A, const FourierSeries& h,
                            const Frequency& freq);

// sup |E(u + h) - (h/A) E(u)' - Q(u, h)| with Q from 16-node quadrature, for
// the Newton increment h taken from u. Returns the defect and ||E(u)||.
std::pair<double, double> step_residual_defect(const FourierSeries& u,
                                               const FourierSeries& f,
                                               const Frequency& freq, cplx eps);

// Least-squares slope of log r_{n+1} against log r_n over pairs with
// r_{n+1} > floor. NaN if fewer than two pairs.
double quadratic_fit_slope(const std::vector<double>& history,
                           double floor = 1e-13);

// theta_j = j / n with the curve point gamma(theta_j).
struct CurveSample {
  double theta;
  cplx x;
  cplx y;
};
std::vector<CurveSample> sample_curve(const InvariantCurve& curve, int n);

// Zero-mean normalization u(theta - u0) - u0 applied to a state.
NewtonState normalize(const NewtonState& s);

}  // namespace kamforge
