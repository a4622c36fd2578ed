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

// Solutions off the unit circle |q| != 1: the fixed point u = eps E_q(f o (id+u)),
// its Taylor expansion at q = 0, and cross-validation against Newton.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "kamforge/fourier.hpp"
#include "kamforge/frequency.hpp"
#include "kamforge/kam.hpp"

namespace kamforge {

struct PicardConfig {
  double tol = 1e-14;  // sup-norm of successive differences
  int max_iters = 500;
  int cutoff = kDefaultCutoff;
  double damping = 1.0;         // relaxation factor in (0, 1]
  double circle_margin = 0.05;  // required | |q| - 1 |
};

struct PicardResult {
  FourierSeries u;
  SolveReport report;  // residual_history holds the successive differences
};

PicardResult picard_solve(const FourierSeries& f, const Frequency& freq,
                          cplx eps, const PicardConfig& config = {});

inline constexpr int kTaylorOrderCap = 60;

struct QTaylorData {
  std::vector<FourierSeries> orders;  // orders[n-1] = u_n, cutoff n
  // Largest modulus dropped when u_n is cut to modes |k| <= n.
  std::vector<double> support_tails;
  cplx eps{};
  FourierSeries f_ref;
};

// u_n for n = 1..n_q from the order-by-order expansion at q = 0. Products are
// direct convolutions, so the support and top-coefficient laws hold exactly.
QTaylorData taylor0_recursion(const FourierSeries& f, cplx eps, int n_q);

struct TaylorEval {
  FourierSeries u;
  double last_term = 0.0;    // sup-norm of q^n u_n at the last order
  bool decaying = true;      // geometric decay of the tail terms
  std::vector<double> term_norms;
};

TaylorEval taylor0_eval(const QTaylorData& data, cplx q);

// Coefficient k of u_{|k|} for 1 <= |k| <= orders, 0 at k = 0.
FourierSeries inverse_scattering(const QTaylorData& data);

// Root-test estimate max_n ||u_n||^{1/n} over the second half of the orders.
double root_test_radius(const QTaylorData& data);

enum class Method { kNewton, kPicard, kTaylor0 };
const char* to_string(Method m);

struct CrosscheckOptions {
  SolverConfig newton;
  PicardConfig picard;
  int taylor_orders = 40;
};

struct CrosscheckReport {
  cplx omega{};
  cplx q{};
  cplx eps{};
  std::map<std::string, FourierSeries> solutions;
  std::map<std::string, std::string> notices;  // skipped or failed methods
  // "a|b" -> sup-norm distance after mean removal.
  std::map<std::string, double> differences;
};

CrosscheckReport crosscheck(const FourierSeries& f, const Frequency& freq,
                            cplx eps, const std::vector<Method>& methods,
                            const CrosscheckOptions& options = {});

// max_k |conj(u_k(q)) - u_{-k}(1/conj q)| from Newton solves at freq and at its
// reflection.
double conjugate_reflection_check(const FourierSeries& f, const Frequency& freq,
                                  double eps, const SolverConfig& config = {});

}  // namespace kamforge
