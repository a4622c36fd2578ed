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

#include <cmath>
#include <random>

#include "doctest.h"
#include "kamforge/error.hpp"
#include "kamforge/operators.hpp"
#include "test_support.hpp"

using namespace kamforge;
using kamforge::testing::max_coeff_gap;
using kamforge::testing::random_series;
using kamforge::testing::real_symmetric;
using doctest::Approx;

namespace {

std::vector<Frequency> km_points(std::mt19937_64& rng, std::size_t n) {
  return sample_KM(DiophantineClass(6.0, 0.5, 2000), n, rng, 0.1);
}

}  // namespace

TEST_CASE("delta multipliers") {
  const auto g = Frequency::from_omega(0.37);
  CHECK(apply(MultiplierKind::kDelta, FourierSeries::constant(3.0), g).is_zero());

  for (auto [p, m] : {std::pair{1, 2}, {1, 3}, {2, 5}, {3, 7}}) {
    const double w = static_cast<double>(p) / m;
    const OperatorSet ops(Frequency::from_omega(w), 20);
    for (int k = -20; k <= 20; ++k) {
      const double s = std::sin(k * kPi * w);
      CHECK(std::abs(ops.multiplier(MultiplierKind::kDelta, k) + 4.0 * s * s) < 1e-14);
    }
  }
}

TEST_CASE("gamma at q = 0") {
  const auto r = apply(MultiplierKind::kGamma, FourierSeries::mode(1), Frequency::zero());
  CHECK(std::abs(r[1] + 1.0) < 1e-15);
  const auto r2 = apply(MultiplierKind::kGamma, FourierSeries::mode(-1), Frequency::zero());
  CHECK(r2.is_zero());
}

TEST_CASE("inverses annihilate mode 0") {
  const auto g = Frequency::from_omega({0.3, 0.1});
  for (auto kind : {MultiplierKind::kGamma, MultiplierKind::kGammaMinus, MultiplierKind::kEq})
    CHECK(apply(kind, FourierSeries::constant(1.0), g).is_zero());
}

TEST_CASE("resonant multipliers raise only when used") {
  const OperatorSet ops(Frequency::from_omega(0.5), 8);
  CHECK_THROWS_AS(ops.multiplier(MultiplierKind::kGamma, 2), Resonance);
  CHECK_NOTHROW(ops.apply(MultiplierKind::kGamma, FourierSeries::mode(1)));
  CHECK_THROWS_AS(ops.apply(MultiplierKind::kGamma, FourierSeries::mode(2)), Resonance);
  CHECK_THROWS_AS(ops.apply(MultiplierKind::kDelta, FourierSeries(9)), InvalidArgument);
}

TEST_CASE("E^(n) examples") {
  CHECK(e_n(FourierSeries::mode(1), 1) == FourierSeries::mode(1));
  const auto two = e_n(FourierSeries::mode(2), 4);
  CHECK(two[2] == cplx{2.0});
  CHECK(two.l1_norm() == 2.0);
  FourierSeries s(3);
  s.at(1) = s.at(2) = s.at(3) = 1.0;
  const auto six = e_n(s, 6);
  CHECK(six[1] == cplx{6.0});
  CHECK(six[2] == cplx{3.0});
  CHECK(six[3] == cplx{2.0});
  CHECK(six[0] == cplx{});
  CHECK(six.l1_norm() == 11.0);
}

TEST_CASE("E^(n) against divisor enumeration") {
  std::mt19937_64 rng(1);
  const auto phi = random_series(rng, 12);
  for (int n = 1; n <= 30; ++n) {
    FourierSeries ref(12);
    for (int m = 1; m <= 12; ++m)
      for (int d = 1; d * m <= n; ++d)
        if (m * d == n) {
          ref.at(m) += static_cast<double>(d) * phi[m];
          ref.at(-m) += static_cast<double>(d) * phi[-m];
        }
    CHECK(max_coeff_gap(e_n(phi, n), ref) == 0.0);
  }
}

TEST_CASE("difference and inverse identities on K_M") {
  std::mt19937_64 rng(2);
  double nabla_gamma = 0, shift = 0, split = 0, gg = 0;
  for (const auto& f : km_points(rng, 40)) {
    const int n = 24;
    const OperatorSet ops(f, n);
    const auto phi = random_series(rng, n, 0.3);
    const double scale = phi.l1_norm();
    auto centered = phi;
    centered.at(0) = 0.0;

    const auto gphi = ops.apply(MultiplierKind::kGamma, phi);
    nabla_gamma = std::max(
        nabla_gamma, max_coeff_gap(ops.apply(MultiplierKind::kNabla, gphi), centered) / scale);
    shift = std::max(shift, max_coeff_gap(ops.apply(MultiplierKind::kShiftPlus, gphi),
                                          ops.apply(MultiplierKind::kGammaMinus, phi)) /
                                std::max(1.0, gphi.l1_norm()));
    const auto d = ops.apply(MultiplierKind::kDelta, phi);
    const auto nn = ops.apply(MultiplierKind::kNabla, ops.apply(MultiplierKind::kNablaMinus, phi));
    const auto nn2 = ops.apply(MultiplierKind::kNablaMinus, ops.apply(MultiplierKind::kNabla, phi));
    const double dscale = std::max(1.0, d.l1_norm());
    split = std::max({split, max_coeff_gap(d, nn) / dscale, max_coeff_gap(d, nn2) / dscale});
    const auto eq = ops.apply(MultiplierKind::kEq, phi);
    const auto comp = ops.apply(MultiplierKind::kGamma, ops.apply(MultiplierKind::kGammaMinus, phi));
    gg = std::max(gg, max_coeff_gap(eq, comp) / std::max(1.0, eq.l1_norm()));
  }
  CHECK(nabla_gamma < 1e-13);
  CHECK(shift < 1e-13);
  CHECK(split < 1e-13);
  CHECK(gg < 1e-13);
}

TEST_CASE("E_q expansion in q") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> r(0.05, 0.5), a(0.0, kTwoPi);
  for (int t = 0; t < 20; ++t) {
    const cplx q = std::polar(r(rng), a(rng));
    const auto phi = random_series(rng, 10);
    const auto exact = apply(MultiplierKind::kEq, phi, Frequency::from_q(q));
    FourierSeries sum(10);
    cplx qn = 1.0;
    for (int n = 1; n <= 40; ++n) {
      qn *= q;
      sum += e_n(phi, n) * qn;
    }
    // |E^(n) phi|_1 <= n |phi|_1, so the tail is bounded by sum_{n>40} n |q|^n.
    const double aq = std::abs(q);
    double tail = 0.0;
    for (int n = 41; n <= 400; ++n) tail += n * std::pow(aq, n);
    CHECK(fourier::sup_distance(exact, sum) <= phi.l1_norm() * tail + 1e-13);
  }
}

TEST_CASE("real symmetry of gamma under reflection") {
  std::mt19937_64 rng(4);
  double worst = 0.0;
  for (const auto& f : km_points(rng, 30)) {
    const auto phi = real_symmetric(rng, 12, 0.3);
    const auto a = apply(MultiplierKind::kGamma, phi, f);
    const auto b = apply(MultiplierKind::kGamma, phi, f.reflected());
    for (int k = -12; k <= 12; ++k)
      worst = std::max(worst, std::abs(std::conj(a[k]) - b[-k]) / std::max(1.0, std::abs(a[k])));
  }
  CHECK(worst < 1e-13);
}

TEST_CASE("stable multipliers far from the circle") {
  // 2 pi k Im omega reaches 2 pi * 250 * 0.5 > 700; naive q^{-k} would overflow.
  const auto f = Frequency::from_omega({0.3, 0.5});
  const OperatorSet ops(f, 250);
  const cplx g = ops.multiplier(MultiplierKind::kGamma, 250);
  CHECK(std::isfinite(std::abs(g)));
  CHECK(std::abs(g + 1.0) < 1e-15);
  CHECK(std::abs(ops.multiplier(MultiplierKind::kGamma, -250)) < 1e-15);
  CHECK(std::abs(ops.multiplier(MultiplierKind::kEq, 250)) < 1e-300);
  CHECK(std::abs(ops.multiplier(MultiplierKind::kShiftPlus, 250)) < 1e-300);
  CHECK_THROWS_AS(ops.multiplier(MultiplierKind::kShiftMinus, 250), OverflowRisk);
  CHECK_THROWS_AS(ops.apply(MultiplierKind::kShiftMinus, FourierSeries::mode(250)),
                  OverflowRisk);
  CHECK_NOTHROW(ops.apply(MultiplierKind::kGamma, FourierSeries::mode(250)));
}
