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
#include <numeric>
#include <random>

#include "doctest.h"
#include "kamforge/continuation.hpp"
#include "kamforge/error.hpp"
#include "kamforge/obstruction.hpp"
#include "test_support.hpp"

using namespace kamforge;
using kamforge::testing::max_coeff_gap;
using kamforge::testing::random_series;
using doctest::Approx;

namespace {

const FourierSeries kCos = FourierSeries::cosine(1);

int smallest_resonant_order(int K, int m) {
  for (int n = 1;; ++n)
    if ((n * K) % m == 0) return n;
}

}  // namespace

TEST_CASE("eigenvalues of the second difference at p/m") {
  const RationalFreq half(1, 2), third(1, 3);
  CHECK(delta_star(FourierSeries::constant(2.0), half).is_zero());
  CHECK(std::abs(delta_star(FourierSeries::mode(1), half)[1] + 4.0) < 1e-15);
  CHECK(delta_star(FourierSeries::mode(3), third).is_zero());
  for (int m = 2; m <= 9; ++m)
    for (int p = 1; p < m; ++p) {
      if (std::gcd(p, m) != 1) continue;
      const RationalFreq rf(p, m);
      CHECK(rf.D(0) == 0.0);
      for (int j = 1; j < m; ++j) CHECK(rf.D(j) < 0.0);
    }
  CHECK_THROWS_AS(RationalFreq(2, 4), InvalidArgument);
  CHECK_THROWS_AS(RationalFreq(1, 0), InvalidArgument);
}

TEST_CASE("projectors") {
  const RationalFreq rf(1, 3);
  CHECK(projector(kCos, rf, 0).is_zero());
  const auto p = projector(FourierSeries::mode(3) + FourierSeries::mode(1).extended(3), rf, 0);
  CHECK(p == FourierSeries::mode(3));

  std::mt19937_64 rng(1);
  const auto phi = random_series(rng, 20);
  for (int m : {2, 3, 5, 7}) {
    const RationalFreq r(1, m);
    FourierSeries sum(20);
    for (int j = 0; j < m; ++j) sum += projector(phi, r, j);
    CHECK(sum == phi);
  }
  CHECK_THROWS_AS(projector(phi, rf, 3), InvalidArgument);
}

TEST_CASE("partial inverse") {
  CHECK(std::abs(e_star(FourierSeries::mode(1), RationalFreq(1, 2))[1] + 0.25) < 1e-16);
  CHECK(std::abs(e_star(FourierSeries::mode(1), RationalFreq(1, 3))[1] + 1.0 / 3.0) < 1e-15);
  CHECK(e_star(FourierSeries::constant(1.0), RationalFreq(1, 3)).is_zero());
  CHECK(RationalFreq(1, 2).lambda(1) == -0.25);
}

TEST_CASE("range and kernel of the second difference") {
  std::mt19937_64 rng(2);
  double worst = 0.0;
  for (int m = 2; m <= 7; ++m)
    for (int p = 1; p < m; ++p) {
      if (std::gcd(p, m) != 1) continue;
      const RationalFreq rf(p, m);
      const auto phi = random_series(rng, 25);
      const auto back = delta_star(e_star(phi, rf), rf) + projector(phi, rf, 0);
      worst = std::max(worst, max_coeff_gap(back, phi) / phi.max_abs_coeff());
      CHECK(projector(delta_star(phi, rf), rf, 0).is_zero());
    }
  CHECK(worst < 1e-14);
}

TEST_CASE("obstruction examples") {
  const auto res = FourierSeries::mode(3) + FourierSeries::mode(-3);
  const auto r = obstruction_order(res, RationalFreq(1, 3));
  REQUIRE(r.n_star);
  CHECK(*r.n_star == 1);
  CHECK(max_coeff_gap(r.witness, res) == 0.0);

  const auto t = obstruction_order(kCos, RationalFreq(1, 3));
  REQUIRE(t.n_star);
  CHECK(*t.n_star == 3);
  const auto h = obstruction_order(kCos, RationalFreq(1, 2));
  REQUIRE(h.n_star);
  CHECK(*h.n_star == 2);
  CHECK(h.K == 1);
  CHECK(h.A == cplx{0.5});
}

TEST_CASE("oracle tables") {
  const auto o = beta_gamma_oracle(1, RationalFreq(1, 3), 5, 0.5);
  CHECK(o.betas[0] == 1.0);
  CHECK(o.betas[1] == Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(o.gammas[0] == cplx{0.5});
  for (double b : o.betas) CHECK(std::isfinite(b));
  CHECK(oracle_consistency(kCos, RationalFreq(1, 3), 3) < 1e-12);
  CHECK(oracle_consistency(kCos, RationalFreq(1, 3), 1) == 0.0);
}

TEST_CASE("obstruction law, positivity and consistency for pure cosines") {
  for (int K = 1; K <= 3; ++K)
    for (int m = 2; m <= 7; ++m)
      for (int p = 1; p < m; ++p) {
        if (std::gcd(p, m) != 1) continue;
        CAPTURE(K);
        CAPTURE(p);
        CAPTURE(m);
        const RationalFreq rf(p, m);
        const auto r = obstruction_order(FourierSeries::cosine(K), rf);
        REQUIRE(r.n_star);
        const int expected = smallest_resonant_order(K, m);
        CHECK(*r.n_star == expected);
        const auto o = beta_gamma_oracle(K, rf, expected, 0.5);
        for (int n = 0; n < expected; ++n) CHECK(o.betas[n] > 0.0);
        CHECK(std::abs(r.gamma_engine - r.gamma_oracle) <= 1e-12 * std::abs(r.gamma_oracle));
        CHECK(r.relative_gap < 1e-12);
      }
}

TEST_CASE("mixed top modes: direct composition oracle at 1/5") {
  // f = cos 2 pi theta + 0.3 cos 4 pi theta. The modes 2 + 2 + 1 reach the
  // kernel 5Z at order 3, before the top-mode law n K in 5Z (n = 5).
  const auto f = kCos.extended(2) + FourierSeries::cosine(2, 0.3);
  const RationalFreq rf(1, 5);
  const auto u1 = e_star(f, rf);
  REQUIRE(projector(f, rf, 0).is_zero());
  const auto g2 = fourier::product(fourier::derivative(f), u1);
  REQUIRE(projector(g2, rf, 0).max_abs_coeff() < 1e-15);
  const auto u2 = e_star(g2, rf);
  const auto f2 = fourier::derivative(f, 2);
  const auto g3 = fourier::product(fourier::derivative(f), u2).extended(6) +
                  fourier::product(f2, fourier::product(u1, u1)) * cplx{0.5};
  const auto pi0 = projector(g3, rf, 0);
  CHECK(std::abs(pi0[5]) > 1e-3);
  CHECK(std::abs(pi0[-5]) > 1e-3);

  const auto r = obstruction_order(f, rf);
  REQUIRE(r.n_star);
  CHECK(*r.n_star == 3);
  CHECK(max_coeff_gap(r.witness, pi0) < 1e-13);
  CHECK(r.K == 2);
  CHECK(oracle_consistency(f, rf, 5) < 1e-12);
}

TEST_CASE("continuing past the first obstruction fills the tables") {
  ObstructionOptions opt;
  opt.max_order = 8;
  opt.continue_past = true;
  const auto r = obstruction_order(kCos, RationalFreq(1, 3), opt);
  REQUIRE(r.n_star);
  CHECK(*r.n_star == 3);
  CHECK(r.orders_computed == 8);
  CHECK(r.gamma_engine_table.size() == 8);
  CHECK(r.u.orders.size() == 8);
  for (std::size_t n = 0; n < r.u.orders.size(); ++n)
    CHECK(projector(r.u.orders[n], RationalFreq(1, 3), 0).is_zero());
}

TEST_CASE("extended precision agrees with double") {
  ObstructionOptions a, b;
  a.max_order = b.max_order = 7;
  a.continue_past = b.continue_past = true;
  b.exactness = Exactness::kExtended;
  const auto f = kCos.extended(2) + FourierSeries::sine(2, 0.2);
  const auto x = obstruction_order(f, RationalFreq(2, 7), a);
  const auto y = obstruction_order(f, RationalFreq(2, 7), b);
  CHECK(y.u.exactness == Exactness::kExtended);
  REQUIRE(x.u.orders.size() == y.u.orders.size());
  for (std::size_t n = 0; n < x.u.orders.size(); ++n)
    CHECK(max_coeff_gap(x.u.orders[n], y.u.orders[n]) <=
          1e-13 * std::max(1.0, y.u.orders[n].max_abs_coeff()));
}

TEST_CASE("reflection when only the negative top mode is present") {
  const auto f = FourierSeries::mode(-1, cplx{0.5, 0.2});
  const auto r = obstruction_order(f, RationalFreq(1, 3));
  CHECK(r.reflected);
  CHECK(r.K == 1);
  CHECK(r.A == cplx{-0.5, -0.2});
  REQUIRE(r.n_star);
  CHECK(*r.n_star == 3);
  CHECK(r.relative_gap < 1e-12);
}

TEST_CASE("non-zero mean is rejected") {
  CHECK_THROWS_AS(obstruction_order(kCos + FourierSeries::constant(0.1).extended(1),
                                    RationalFreq(1, 3)),
                  InvalidArgument);
}

TEST_CASE("natural-boundary diagnostic") {
  // Picard iteration counts as q approaches e^{2 pi i / 3} radially; logged only.
  for (double r : {0.5, 0.7, 0.8, 0.9, 0.94}) {
    try {
      const auto p = picard_solve(kCos, Frequency::from_q(std::polar(r, kTwoPi / 3.0)), 0.05);
      MESSAGE("|q| " << r << ": " << p.report.iterations << " iterations");
    } catch (const Error& e) {
      MESSAGE("|q| " << r << ": " << e.what());
    }
  }
}
