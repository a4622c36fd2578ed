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

// Formal solutions in eps at a rational rotation number p/m. The second
// difference there is diagonal with eigenvalues D_j = -4 sin^2(j pi p/m) on the
// residue classes k = j mod m; D_0 = 0, so order n of the expansion is solvable
// only if the m-divisible modes of g_n vanish.

#include <optional>
#include <vector>

#include "kamforge/fourier.hpp"

namespace kamforge {

class RationalFreq {
 public:
  RationalFreq(int p, int m);

  int p() const noexcept { return p_; }
  int m() const noexcept { return m_; }
  double omega() const noexcept { return static_cast<double>(p_) / m_; }

  // Residue of k in [0, m).
  int residue(int k) const noexcept { return ((k % m_) + m_) % m_; }
  // D_{k mod m}.
  double D(int k) const noexcept { return D_[residue(k)]; }
  // -1 / (4 sin^2(j pi p/m)) for j = k mod m != 0, and 0 on the kernel.
  double lambda(int k) const noexcept { return lambda_[residue(k)]; }
  long double lambda_ext(int k) const noexcept { return lambda_ext_[residue(k)]; }

 private:
  int p_;
  int m_;
  std::vector<double> D_;
  std::vector<double> lambda_;
  std::vector<long double> lambda_ext_;
};

FourierSeries delta_star(const FourierSeries& phi, const RationalFreq& rf);
// Keeps the modes k = j mod m.
FourierSeries projector(const FourierSeries& phi, const RationalFreq& rf, int j);
FourierSeries e_star(const FourierSeries& phi, const RationalFreq& rf);

enum class Exactness { kFloat, kExtended };

struct TrigPolyEpsSeries {
  std::vector<FourierSeries> orders;  // orders[n-1]: coefficient of eps^n
  Exactness exactness = Exactness::kFloat;
};

struct ObstructionOptions {
  int max_order = 12;
  // Relative to the accumulated coefficient scale of g_n.
  double threshold = 1e-10;
  // Keep solving on the complement of the kernel after the first obstruction
  // so the top-coefficient table can be filled to max_order.
  bool continue_past = false;
  // kExtended runs the recursion in long double.
  Exactness exactness = Exactness::kFloat;
};

struct ObstructionReport {
  int p = 0;
  int m = 1;
  int K = 0;      // top mode of f (after reflection)
  cplx A{};       // coefficient of f at K
  bool reflected = false;
  std::optional<int> n_star;
  FourierSeries witness;  // projection of g_{n_star} on the kernel
  cplx gamma_engine{};
  cplx gamma_oracle{};
  double relative_gap = 0.0;
  int orders_computed = 0;
  std::vector<double> kernel_norms;       // ||Pi_0 g_n||_1
  std::vector<double> scales;             // accumulated scale of g_n
  std::vector<cplx> gamma_engine_table;   // coefficient nK of g_n
  std::vector<double> betas;              // oracle
  std::vector<cplx> gammas;               // oracle
  TrigPolyEpsSeries u;
};

ObstructionReport obstruction_order(const FourierSeries& f,
                                    const RationalFreq& rf,
                                    const ObstructionOptions& options = {});

struct OracleTables {
  std::vector<double> betas;   // beta_1..beta_up_to
  std::vector<cplx> gammas;    // gamma_1..gamma_up_to
  cplx A{};
};

// beta_1 = 1, beta_n = sum_r (1/r!) [b^r]_{n-1} with b_j = -lambda_[jK] beta_j,
// gamma_n = (-2 pi i K)^{n-1} A^n beta_n.
OracleTables beta_gamma_oracle(int K, const RationalFreq& rf, int up_to,
                               cplx A = 1.0);

// max_n |g_n(nK) - gamma_n| / |gamma_n| for n <= up_to.
double oracle_consistency(const FourierSeries& f, const RationalFreq& rf,
                          int up_to,
                          Exactness exactness = Exactness::kExtended);

}  // namespace kamforge
