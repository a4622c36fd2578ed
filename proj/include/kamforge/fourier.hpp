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

// Truncated two-sided Fourier series phi(theta) = sum_{|k|<=N} c_k e_k(theta),
// e_k(theta) = e^{2 pi i k theta}, and the arithmetic used by the solvers.

#include <span>
#include <vector>

#include "kamforge/numeric.hpp"

namespace kamforge {

class FourierSeries {
 public:
  FourierSeries() : cutoff_(0), coeffs_(1, cplx{}) {}
  explicit FourierSeries(int cutoff);
  // coeffs ordered k = -cutoff..cutoff.
  FourierSeries(int cutoff, std::vector<cplx> coeffs);

  static FourierSeries constant(cplx c);
  // c * e_k
  static FourierSeries mode(int k, cplx c = 1.0);
  // amplitude * cos(2 pi k theta)
  static FourierSeries cosine(int k, double amplitude = 1.0);
  // amplitude * sin(2 pi k theta)
  static FourierSeries sine(int k, double amplitude = 1.0);

  int cutoff() const noexcept { return cutoff_; }
  std::size_t size() const noexcept { return coeffs_.size(); }

  // Coefficient of e_k; zero beyond the cutoff.
  cplx operator[](int k) const noexcept {
    return (k < -cutoff_ || k > cutoff_) ? cplx{} : coeffs_[k + cutoff_];
  }
  // Mutable access; k must lie within the cutoff.
  cplx& at(int k);

  std::span<const cplx> coeffs() const noexcept { return coeffs_; }
  std::span<cplx> coeffs() noexcept { return coeffs_; }

  cplx mean() const noexcept { return coeffs_[cutoff_]; }

  // Same function on a wider (or equal) index range.
  FourierSeries extended(int cutoff) const;

  double l1_norm() const noexcept;
  double max_abs_coeff() const noexcept;
  // Largest |k| with a nonzero coefficient (0 for constants and zero).
  int degree() const noexcept;
  bool is_zero() const noexcept { return l1_norm() == 0.0; }

  FourierSeries& operator+=(const FourierSeries& other);
  FourierSeries& operator-=(const FourierSeries& other);
  FourierSeries& operator*=(cplx s);
  FourierSeries& operator+=(cplx s) {
    coeffs_[cutoff_] += s;
    return *this;
  }

  friend FourierSeries operator+(FourierSeries a, const FourierSeries& b) {
    return a += b;
  }
  friend FourierSeries operator-(FourierSeries a, const FourierSeries& b) {
    return a -= b;
  }
  friend FourierSeries operator*(FourierSeries a, cplx s) { return a *= s; }
  friend FourierSeries operator*(cplx s, FourierSeries a) { return a *= s; }
  friend FourierSeries operator-(FourierSeries a) { return a *= -1.0; }

  // Coefficient-exact equality (same cutoff, same bits).
  friend bool operator==(const FourierSeries&, const FourierSeries&) = default;

 private:
  int cutoff_;
  std::vector<cplx> coeffs_;
};

struct Truncation {
  FourierSeries series;
  double tail = 0.0;  // max modulus among the dropped coefficients
};

struct CompositionReport {
  double aliasing_tail = 0.0;
  int grid_size = 0;
};

struct Composition {
  FourierSeries series;
  CompositionReport report;
};

struct CompositionOptions {
  // Cutoff of the returned series; 0 means the joint cutoff of the operands.
  int out_cutoff = 0;
  int min_grid = 64;
};

namespace fourier {

// Keeps |k| <= cutoff, recording the largest dropped modulus.
Truncation truncate(const FourierSeries& phi, int cutoff);

// sum_k c_k e^{2 pi i k theta}.
cplx eval(const FourierSeries& phi, cplx theta);

cplx coeff(const FourierSeries& phi, int k);

// Values at theta_j = j / n, n >= 2 * cutoff + 1.
std::vector<cplx> to_grid(const FourierSeries& phi, std::size_t n);
// Inverse of to_grid; keeps |k| <= cutoff and reports the max modulus of the
// modes in (cutoff, n/2) as the tail.
Truncation from_grid(std::span<const cplx> values, int cutoff);

// Max modulus over an oversampled grid (at least 4 * cutoff points).
double sup_norm(const FourierSeries& phi);
double sup_distance(const FourierSeries& a, const FourierSeries& b);

// Exact product (cutoff = sum of cutoffs, capped at kHardCutoffCap with the
// dropped tail reported). Picks direct convolution or FFT by size.
Truncation product_capped(const FourierSeries& a, const FourierSeries& b,
                          int cap = kHardCutoffCap);
FourierSeries product(const FourierSeries& a, const FourierSeries& b);
// Product truncated to the given cutoff.
FourierSeries product(const FourierSeries& a, const FourierSeries& b,
                      int cutoff);
// The two evaluation paths of product, exposed for cross-checking.
FourierSeries product_direct(const FourierSeries& a, const FourierSeries& b);
FourierSeries product_fft(const FourierSeries& a, const FourierSeries& b);

// (2 pi i k)^order c_k.
FourierSeries derivative(const FourierSeries& phi, int order = 1);

// theta -> f(theta + u(theta)) by evaluation on an anti-aliased grid of at
// least 4x the joint cutoff. A constant u is applied exactly as the mode-wise
// shift c_k e^{2 pi i k u0}.
Composition compose_id_plus(const FourierSeries& f, const FourierSeries& u,
                            const CompositionOptions& options = {});

// Series of 1/A through grid values; throws NearSingular when min |A| on the
// grid falls below floor. out_cutoff 0 means a quarter of the grid.
FourierSeries invert_pointwise(const FourierSeries& a,
                               double floor = kInvertFloor, int out_cutoff = 0);

// sum_k |c_k| e^{2 pi r |k|}: an upper bound for sup |phi| on |Im theta| < r.
double strip_norm_bound(const FourierSeries& phi, double r);

}  // namespace fourier
}  // namespace kamforge
