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

// Rotation numbers on the Riemann sphere, the Diophantine sets A_M (real and
// complex) and K_M, the small divisors lambda_k(q) = 1/(q^k - 1), and a sampled
// estimator for the C^1-holomorphic norm over K_M.

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "kamforge/numeric.hpp"

namespace kamforge {

enum class Chart { kInner, kOuter };

const char* to_string(Chart chart);

class Frequency {
 public:
  // q = e^{2 pi i omega}; the real part of omega is reduced to [0, 1).
  static Frequency from_omega(cplx omega);
  // q = 0 and q = infinity map to the special points of the sphere.
  static Frequency from_q(cplx q);
  static Frequency zero();
  static Frequency infinity();

  bool is_zero() const noexcept { return special_ == Special::kZero; }
  bool is_infinity() const noexcept { return special_ == Special::kInfinity; }
  bool is_special() const noexcept { return special_ != Special::kNone; }

  // Finite points only.
  cplx omega() const;
  Chart chart() const noexcept { return chart_; }
  // 2 pi Im omega = -log|q|; +inf at q = 0, -inf at q = infinity.
  double log_scale() const noexcept { return log_scale_; }

  // q itself; overflows to infinity when not representable.
  cplx q() const;
  // q in the inner chart, xi = 1/q in the outer one; modulus <= 1.
  cplx coordinate() const;

  // q^k = e^{2 pi i k omega}; throws OverflowRisk past the exponent cap.
  cplx q_pow(int k) const;
  // q^k - 1 without cancellation near resonance (may overflow like q_pow).
  cplx q_pow_minus_one(int k) const;
  // q^k - 2 + q^{-k} = -4 sin^2(pi k omega).
  cplx second_difference(int k) const;

  // k omega minus the nearest integer to its real part; its sine is the
  // accurate small quantity behind every divisor.
  cplx reduced_phase(int k) const;

  // 1/conj(q), i.e. omega -> conj(omega).
  Frequency reflected() const;

 private:
  enum class Special { kNone, kZero, kInfinity };
  Frequency() = default;

  Special special_ = Special::kNone;
  cplx omega_{};
  Chart chart_ = Chart::kInner;
  double log_scale_ = 0.0;
};

// Parameters (M, tau) of |omega - n/m| >= 1/(M m^{2+tau}) with the search
// truncated at denominators <= m_max.
class DiophantineClass {
 public:
  DiophantineClass() : DiophantineClass(6.0, 0.5) {}
  DiophantineClass(double M, double tau, int m_max = 10000);

  double M() const noexcept { return M_; }
  double tau() const noexcept { return tau_; }
  int m_max() const noexcept { return m_max_; }
  double sigma() const noexcept { return 4.0 + 2.0 * tau_; }

  // Gap radius 1/(M m^{2+tau}).
  double radius(std::int64_t m) const;
  // 2 zeta(1+tau) / M, the upper bound for the total gap measure.
  double gap_measure_bound() const;

 private:
  double M_;
  double tau_;
  int m_max_;
};

struct MarginReport {
  double margin = 0.0;  // min |x - n/m| M m^{2+tau} over tested fractions
  std::int64_t n = 0;
  std::int64_t m = 1;
  int truncated_at = 0;   // m_max
  bool member = false;    // margin >= 1
};

MarginReport dioph_real_margin(double x, const DiophantineClass& cls);

// Distance from x to the complement of the union of gaps (m <= m_max).
double dist_to_AMR(double x, const DiophantineClass& cls);

bool in_AMC(cplx omega, const DiophantineClass& cls);
bool in_KM(const Frequency& f, const DiophantineClass& cls);

// 1/(q^k - 1), evaluated in the chart where the relevant power has modulus
// <= 1. Throws Resonance when |q^k - 1| < kResonanceFloor.
cplx lambda_k(const Frequency& f, int k);

struct SmallDivisorReport {
  double max_ratio = 0.0;  // max |lambda_k| / (sqrt2 M |k|^{1+tau})
  int worst_k = 0;
  int k_max = 0;
};

// Throws BoundViolation when some |lambda_k| exceeds sqrt2 M |k|^{1+tau}.
SmallDivisorReport check_small_divisor_bound(const Frequency& f,
                                             const DiophantineClass& cls,
                                             int k_max);

// |e^{2 pi i z} - 1| >= dist(z, Z) for |Im z| <= 1/2; throws BoundViolation
// when it fails and InvalidArgument outside the band.
bool check_exp_dist_bound(cplx z);

struct GeometryOptions {
  // Denominators whose gaps are listed explicitly; all m <= m_max count
  // towards the measure.
  int list_m_max = 100;
  int boundary_points = 2001;
};

struct SetGeometry {
  double M = 0.0;
  double tau = 0.0;
  int m_max = 0;
  int list_m_max = 0;
  std::vector<std::pair<double, double>> gaps;  // merged, sorted, in [0, 1]
  double total_gap_measure = 0.0;
  double measure_bound = 0.0;
  // Upper and lower sawtooth |Im omega| = dist(Re omega, A_M^R).
  std::vector<cplx> boundary_omega;
  std::vector<cplx> boundary_q;
};

SetGeometry export_set_geometry(const DiophantineClass& cls,
                                const GeometryOptions& options = {});

// Measure of the union of gaps with m <= m_max, clipped to [0, 1].
double total_gap_measure(const DiophantineClass& cls);

// Random points of K_M: Re omega uniform, |Im omega| = dist + extra with extra
// uniform in [0, max_extra]. sign: +1 inner only, -1 outer only, 0 both.
std::vector<Frequency> sample_KM(const DiophantineClass& cls, std::size_t count,
                                 std::mt19937_64& rng, double max_extra = 0.3,
                                 int sign = 0);

struct SampledFamily {
  std::vector<Frequency> points;
  std::vector<std::vector<cplx>> values;
  std::vector<std::vector<cplx>> derivs;  // d/dq
};

struct NormEstimate {
  double n0 = 0.0;
  double n1 = 0.0;
  double n2 = 0.0;
  double total() const noexcept { return n0 + n1 + n2; }
};

// Sampled lower bounds for n0, n1, n2 with l1 vector norms. Pairs are formed
// within each chart; outer points use xi = 1/q and the derivative -q^2 phi'.
NormEstimate c1hol_norm_estimate(const SampledFamily& family);

}  // namespace kamforge
