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
#include "kamforge/continuation.hpp"
#include "kamforge/error.hpp"
#include "test_support.hpp"

using namespace kamforge;
using kamforge::testing::kGolden;
using kamforge::testing::max_coeff_gap;
using kamforge::testing::random_series;
using doctest::Approx;

namespace {

const FourierSeries kCos = FourierSeries::cosine(1);

}  // namespace

TEST_CASE("Picard basics") {
  const auto q = Frequency::from_q(0.3);
  const auto zero = picard_solve(kCos, q, 0.0);
  CHECK(zero.u.is_zero());
  CHECK(zero.report.iterations == 1);

  CHECK(std::abs(q.omega() - cplx{0.0, 0.19162}) < 1e-4);
  const auto r = picard_solve(kCos, q, 0.05);
  CHECK(r.report.converged);
  CHECK(std::abs(r.report.beta) < 1e-12);

  CHECK_THROWS_AS(picard_solve(kCos, Frequency::from_omega(kGolden), 0.05), InvalidArgument);
  PicardConfig bad;
  bad.damping = 0.0;
  CHECK_THROWS_AS(picard_solve(kCos, q, 0.05, bad), InvalidArgument);
}

TEST_CASE("Picard first-order scaling") {
  const auto q = Frequency::from_q(0.3);
  const auto first = apply(MultiplierKind::kEq, kCos, q);
  auto defect = [&](double eps) {
    return fourier::sup_norm(picard_solve(kCos, q, eps).u - (first * cplx{eps}).extended(kDefaultCutoff));
  };
  // The halving ratio is 4 (1 + O(eps)); it must approach 4 as eps shrinks.
  double prev = INFINITY;
  for (double eps : {0.04, 0.02, 0.01, 0.005}) {
    const double ratio = defect(eps) / defect(eps / 2);
    MESSAGE("eps " << eps << " halving ratio " << ratio);
    CHECK(ratio > 4.0);
    CHECK(ratio < prev);
    prev = ratio;
  }
  CHECK(prev == Approx(4.0).epsilon(0.05));
}

TEST_CASE("damped Picard reaches the same fixed point") {
  const auto q = Frequency::from_q({0.2, 0.3});
  PicardConfig damped;
  damped.damping = 0.6;
  const auto a = picard_solve(kCos, q, 0.05);
  const auto b = picard_solve(kCos, q, 0.05, damped);
  CHECK(fourier::sup_distance(a.u, b.u) < 1e-13);
}

TEST_CASE("Taylor at q = 0: first order, support and top laws") {
  const auto d = taylor0_recursion(kCos, 0.05, 10);
  REQUIRE(d.orders.size() == 10);
  CHECK(std::abs(d.orders[0][1] - 0.025) < 1e-17);
  CHECK(std::abs(d.orders[0][-1] - 0.025) < 1e-17);

  const auto f = kCos + FourierSeries::cosine(3, 0.3);
  const cplx eps = 0.05;
  const auto t = taylor0_recursion(f, eps, 12);
  CHECK(std::abs(t.orders[2][3] - 0.15 * eps) < 1e-16);
  CHECK(std::abs(t.orders[2][-3] - 0.15 * eps) < 1e-16);

  std::mt19937_64 rng(1);
  for (int deg = 1; deg <= 5; ++deg) {
    auto g = random_series(rng, deg, 0.2, 0.5);
    g.at(0) = 0.0;
    const auto data = taylor0_recursion(g, {0.05, 0.01}, 40);
    for (std::size_t n = 1; n <= data.orders.size(); ++n) {
      const auto& un = data.orders[n - 1];
      const int ni = static_cast<int>(n);
      CHECK(un.cutoff() == ni);
      CHECK(data.support_tails[n - 1] == 0.0);
      for (int s : {ni, -ni})
        CHECK(std::abs(un[s] - data.eps * g[s]) <= 1e-14 * std::max(1.0, std::abs(un[s])));
    }
  }
}

TEST_CASE("Taylor recursion against a direct second-order expansion") {
  // u_2 = eps E^(2) f + eps E^(1)(f' u_1), u_1 = eps E^(1) f.
  std::mt19937_64 rng(2);
  auto f = random_series(rng, 3, 0.3);
  f.at(0) = 0.0;
  const cplx eps{0.05, 0.02};
  const auto data = taylor0_recursion(f, eps, 2);
  const auto u1 = e_n(f, 1) * eps;
  const auto u2 = e_n(f, 2) * eps + e_n(fourier::product(fourier::derivative(f), u1), 1) * eps;
  CHECK(max_coeff_gap(data.orders[0], u1) < 1e-16);
  CHECK(max_coeff_gap(data.orders[1], u2) < 1e-15);
}

TEST_CASE("Taylor evaluation") {
  const auto data = taylor0_recursion(kCos, 0.05, 40);
  CHECK(taylor0_eval(data, 0.0).u.is_zero());
  const auto ev = taylor0_eval(data, 0.3);
  CHECK(ev.decaying);
  const auto p = picard_solve(kCos, Frequency::from_q(0.3), 0.05);
  CHECK(fourier::sup_distance(ev.u, p.u) < 1e-8);
  // Geometric decay of |q^n u_n| at q = 0.3.
  const double radius = root_test_radius(data);
  MESSAGE("root-test radius " << radius << ", reference domain e^{-2 pi / 6} = "
                              << std::exp(-kTwoPi / 6.0));
  CHECK(radius * 0.3 < 1.0);
  const auto& tn = ev.term_norms;
  REQUIRE(tn.size() == 40);
  CHECK(tn[39] < tn[19]);
  CHECK(tn[39] < std::pow(0.3 * radius * 1.5, 40));
}

TEST_CASE("inverse scattering") {
  const auto d = taylor0_recursion(kCos, 0.05, 3);
  const auto rec = inverse_scattering(d);
  CHECK(std::abs(rec[1] - 0.025) < 1e-17);
  CHECK(rec[0] == cplx{});

  std::mt19937_64 rng(3);
  auto f = random_series(rng, 5, 0.1);
  f.at(0) = 0.0;
  const cplx eps{0.03, -0.01};
  const auto r = inverse_scattering(taylor0_recursion(f, eps, 8));
  double gap = 0.0;
  for (int k = -5; k <= 5; ++k) gap = std::max(gap, std::abs(r[k] - eps * f[k]));
  CHECK(gap < 1e-12);
  CHECK(inverse_scattering(taylor0_recursion(FourierSeries(3), eps, 5)).is_zero());
}

TEST_CASE("crosscheck") {
  const std::vector<Method> all{Method::kNewton, Method::kPicard, Method::kTaylor0};
  const auto r = crosscheck(kCos, Frequency::from_q(0.3), 0.05, all);
  REQUIRE(r.differences.count("picard|taylor0"));
  CHECK(r.differences.at("picard|taylor0") < 1e-8);
  CHECK(r.differences.at("newton|picard") < 1e-10);

  const auto g = crosscheck(kCos, Frequency::from_omega(kGolden), 0.05, all);
  CHECK(g.notices.count("picard"));
  CHECK(g.notices.count("taylor0"));
  CHECK(g.solutions.count("newton"));
  CHECK(g.differences.empty());

  const auto h = crosscheck(kCos, Frequency::from_omega({0.5, 0.5}), 0.05,
                            {Method::kNewton, Method::kPicard});
  CHECK(h.differences.at("newton|picard") < 1e-10);
}

TEST_CASE("conjugate reflection") {
  CHECK(conjugate_reflection_check(kCos, Frequency::from_omega({0.5, 0.5}), 0.05) < 1e-10);
  CHECK(conjugate_reflection_check(kCos, Frequency::from_omega({0.5, 0.5}), 0.0) == 0.0);
  CHECK(conjugate_reflection_check(kCos, Frequency::from_omega(kGolden), 0.05) < 1e-12);
  CHECK_THROWS_AS(conjugate_reflection_check(FourierSeries::mode(1),
                                             Frequency::from_omega({0.5, 0.5}), 0.05),
                  InvalidArgument);
}

TEST_CASE("beta vanishes at Picard fixed points") {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> r(0.1, 0.6), a(0.0, kTwoPi);
  for (int t = 0; t < 10; ++t) {
    const auto p = picard_solve(kCos, Frequency::from_q(std::polar(r(rng), a(rng))), 0.03);
    CHECK(std::abs(p.report.beta) < 1e-11);
  }
}

TEST_CASE("method agreement over the benchmark grid") {
  const std::vector<Method> all{Method::kNewton, Method::kPicard, Method::kTaylor0};
  for (double rq : {0.2, 0.3, 0.5})
    for (double arg : {0.0, kTwoPi * kGolden})
      for (double eps : {0.01, 0.05}) {
        CAPTURE(rq);
        CAPTURE(arg);
        CAPTURE(eps);
        const auto r = crosscheck(kCos, Frequency::from_q(std::polar(rq, arg)), eps, all);
        REQUIRE(r.differences.size() == 3);
        CHECK(r.differences.at("picard|taylor0") < 1e-8);
        CHECK(r.differences.at("newton|picard") < 1e-10);
      }
}
