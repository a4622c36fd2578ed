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
#include <numbers>
#include <random>

#include "doctest.h"
#include "kamforge/error.hpp"
#include "kamforge/frequency.hpp"
#include "test_support.hpp"

using namespace kamforge;
using kamforge::testing::kGolden;
using doctest::Approx;

TEST_CASE("from_omega") {
  const auto one = Frequency::from_omega(0.0);
  CHECK(std::abs(one.q() - 1.0) < 1e-15);
  CHECK(one.chart() == Chart::kInner);

  const auto half = Frequency::from_omega({0.0, std::log(2.0) / kTwoPi});
  CHECK(std::abs(half.q() - 0.5) < 1e-15);
  CHECK(half.chart() == Chart::kInner);

  const cplx omega{0.0, -0.3};
  const auto out = Frequency::from_omega(omega);
  CHECK(out.chart() == Chart::kOuter);
  CHECK(std::abs(out.q()) == Approx(6.5861).epsilon(1e-4));
  const cplx direct = 1.0 / std::exp(kTwoPi * kI * omega);
  CHECK(std::abs(out.coordinate() - direct) < 1e-15);
  CHECK(std::abs(out.coordinate()) == Approx(0.15183).epsilon(1e-4));
}

TEST_CASE("from_q and the special points") {
  const auto f = Frequency::from_q(0.3);
  CHECK(std::abs(f.q() - 0.3) < 1e-15);
  CHECK(std::abs(f.omega() - cplx{0.0, -std::log(0.3) / kTwoPi}) < 1e-15);
  CHECK(Frequency::from_q(0.0).is_zero());
  CHECK(Frequency::zero().log_scale() == INFINITY);
  CHECK(Frequency::infinity().log_scale() == -INFINITY);
  const auto r = Frequency::from_omega({0.3, 0.2}).reflected();
  CHECK(std::abs(r.omega() - cplx{0.3, -0.2}) < 1e-15);
}

TEST_CASE("real Diophantine margin") {
  const DiophantineClass cls(6.0, 0.5, 10000);
  const auto h = dioph_real_margin(0.5, cls);
  CHECK(h.margin == 0.0);
  CHECK(h.n == 1);
  CHECK(h.m == 2);
  CHECK_FALSE(h.member);
  CHECK(h.truncated_at == 10000);

  CHECK(dioph_real_margin(kGolden, cls).member);
  CHECK(dioph_real_margin(kGolden, cls).margin >= 1.0);

  const auto near = dioph_real_margin(0.5 + 1e-4, cls);
  CHECK(near.margin < 1.0);
  CHECK_FALSE(near.member);
  CHECK(cls.radius(2) == Approx(1.0 / (6.0 * std::pow(2.0, 2.5))));
  CHECK(cls.radius(2) == Approx(0.0295).epsilon(1e-3));
}

TEST_CASE("golden mean convergents stay outside every gap") {
  // Independent scan of the Fibonacci convergents F_{n-1}/F_n. Their errors
  // straddle 1/(sqrt5 m^2), so the uniform lower bound is 1/(3 m^2).
  const DiophantineClass cls(6.0, 0.5, 10000);
  long long a = 1, b = 1;
  while (b <= 10000) {
    const double gap = std::abs(kGolden - static_cast<double>(a) / b);
    CHECK(gap >= 1.0 / (3.0 * b * b));
    CHECK(gap >= cls.radius(b));
    const long long c = a + b;
    a = b;
    b = c;
  }
}

TEST_CASE("distance to the real Diophantine set") {
  const DiophantineClass cls(6.0, 0.5, 10000);
  CHECK(dist_to_AMR(kGolden, cls) == 0.0);
  CHECK(dist_to_AMR(0.5, cls) == Approx(cls.radius(2)).epsilon(1e-3));
  CHECK(dist_to_AMR(0.5, cls) >= cls.radius(2));
  // The gap at 0 has radius 1/M; merging can only widen it.
  CHECK(dist_to_AMR(0.0, cls) >= 1.0 / 6.0);
  CHECK(dist_to_AMR(0.0, cls) < 0.2);
}

TEST_CASE("membership in A_M^C and K_M") {
  const DiophantineClass cls;
  CHECK(in_KM(Frequency::zero(), cls));
  CHECK(in_KM(Frequency::infinity(), cls));
  CHECK(in_AMC({0.5, 0.5}, cls));
  CHECK_FALSE(in_AMC({0.5, 0.001}, cls));
  CHECK(in_KM(Frequency::from_omega(kGolden), cls));
  CHECK(in_KM(Frequency::from_q(0.3), cls));
}

TEST_CASE("small divisors") {
  CHECK(std::abs(lambda_k(Frequency::zero(), 1) + 1.0) < 1e-15);
  CHECK(std::abs(lambda_k(Frequency::zero(), -1)) < 1e-15);
  CHECK(std::abs(lambda_k(Frequency::infinity(), 1)) < 1e-15);

  const auto g = Frequency::from_omega(kGolden);
  const cplx l = lambda_k(g, 1);
  CHECK(l.real() == Approx(-0.5).epsilon(1e-14));
  CHECK(l.imag() == Approx(0.19440).epsilon(1e-4));
  const cplx direct = 1.0 / (std::exp(kTwoPi * kI * kGolden) - 1.0);
  CHECK(std::abs(l - direct) < 1e-14);

  CHECK_THROWS_AS(lambda_k(Frequency::from_omega(0.5), 2), Resonance);
}

TEST_CASE("small divisor bound") {
  const DiophantineClass cls(6.0, 0.5, 10000);
  const auto z = check_small_divisor_bound(Frequency::zero(), cls, 100);
  CHECK(z.max_ratio <= 1.0 / std::sqrt(2.0) / 6.0 + 1e-15);
  CHECK(check_small_divisor_bound(Frequency::from_omega(kGolden), cls, 100).max_ratio < 1.0);
  CHECK_THROWS(check_small_divisor_bound(Frequency::from_omega(0.5), cls, 2));
}

TEST_CASE("lambda_k times (q^k - 1) is one") {
  std::mt19937_64 rng(11);
  const DiophantineClass cls(6.0, 0.5, 2000);
  const auto pts = sample_KM(cls, 200, rng, 0.1);
  double worst = 0.0;
  for (const auto& f : pts)
    for (int k = -30; k <= 30; ++k) {
      if (k == 0) continue;
      const double s = 2.0 * kPi * k * f.omega().imag();
      if (std::abs(s) > 200.0) continue;
      const cplx qk = std::exp(kTwoPi * kI * static_cast<double>(k) * f.omega());
      worst = std::max(worst, std::abs(lambda_k(f, k) * (qk - 1.0) - 1.0));
    }
  CHECK(worst < 1e-12);
}

TEST_CASE("chart identity for lambda_k") {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> x(0.0, 1.0), y(0.01, 0.4);
  double worst = 0.0;
  for (int t = 0; t < 200; ++t) {
    const cplx w{x(rng), y(rng)};
    const auto inner = Frequency::from_omega(w);
    const auto outer = Frequency::from_omega(-w);  // q -> 1/q
    for (int k = 1; k <= 20; ++k)
      worst = std::max(worst, std::abs(lambda_k(outer, k) - (-1.0 - lambda_k(inner, k))));
  }
  CHECK(worst < 1e-14);
}

TEST_CASE("symmetries of the Diophantine sets") {
  const DiophantineClass cls(6.0, 0.5, 2000);
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> x(0.0, 1.0), y(0.0, 0.05);
  for (int t = 0; t < 200; ++t) {
    const double r = x(rng);
    const double m = dioph_real_margin(r, cls).margin;
    CHECK(dioph_real_margin(r + 1.0, cls).margin == Approx(m).epsilon(1e-9));
    CHECK(dioph_real_margin(-r, cls).margin == Approx(m).epsilon(1e-9));
    const cplx w{r, y(rng)};
    const bool in = in_AMC(w, cls);
    CHECK(in_AMC(std::conj(w), cls) == in);
    CHECK(in_AMC(-w, cls) == in);
  }
}

TEST_CASE("exponential distance bound") {
  CHECK(check_exp_dist_bound(0.0));
  CHECK(check_exp_dist_bound(0.5));
  CHECK_THROWS_AS(check_exp_dist_bound({0.0, 0.7}), InvalidArgument);
  std::mt19937_64 rng(14);
  std::uniform_real_distribution<double> x(-3.0, 3.0), y(-0.5, 0.5);
  int violations = 0;
  for (int t = 0; t < 10000; ++t) {
    const cplx z{x(rng), y(rng)};
    if (std::abs(std::exp(kTwoPi * kI * z) - 1.0) < dist_to_integers(z)) ++violations;
    CHECK_NOTHROW(check_exp_dist_bound(z));
  }
  CHECK(violations == 0);
}

TEST_CASE("real-to-complex distance comparison") {
  std::mt19937_64 rng(15);
  std::uniform_real_distribution<double> x(-2.0, 2.0), u(-1.0, 1.0);
  for (int t = 0; t < 10000; ++t) {
    const double r = x(rng);
    const double re = r + 0.5 * u(rng);
    const double im = std::abs(re - r) * (1.0 + std::abs(u(rng)));
    const cplx z{re, t % 2 ? im : -im};
    CHECK(dist_to_integers(z) >= dist_to_integers(r) / std::sqrt(2.0) * (1.0 - 1e-14));
  }
}

TEST_CASE("set geometry") {
  const double bound = 2.0 * 2.6123753486854883 / 6.0;
  const DiophantineClass c6(6.0, 0.5, 10000), c12(12.0, 0.5, 10000), c24(24.0, 0.5, 10000);
  CHECK(c6.gap_measure_bound() == Approx(bound).epsilon(1e-12));
  CHECK(c6.gap_measure_bound() == Approx(0.8707).epsilon(1e-4));
  const double m6 = total_gap_measure(c6), m12 = total_gap_measure(c12),
               m24 = total_gap_measure(c24);
  CHECK(m6 <= bound);
  CHECK(m12 <= c12.gap_measure_bound());
  CHECK(m6 > m12);
  CHECK(m12 > m24);

  GeometryOptions opt;
  opt.list_m_max = 20;
  opt.boundary_points = 101;
  const auto g = export_set_geometry(DiophantineClass(6.0, 0.5, 500), opt);
  REQUIRE_FALSE(g.gaps.empty());
  CHECK(g.gaps.front().first == 0.0);
  CHECK(g.gaps.front().second == Approx(1.0 / 6.0).epsilon(0.2));
  for (std::size_t i = 1; i < g.gaps.size(); ++i) {
    CHECK(g.gaps[i].first > g.gaps[i - 1].second);
    CHECK(g.gaps[i].first < g.gaps[i].second);
  }
  CHECK(g.boundary_omega.size() == g.boundary_q.size());
  for (std::size_t i = 0; i < g.boundary_omega.size(); ++i)
    CHECK(std::abs(g.boundary_q[i] - std::exp(kTwoPi * kI * g.boundary_omega[i])) < 1e-12);
}

TEST_CASE("sampled C1-holomorphic norm") {
  SampledFamily constant;
  for (double r : {0.1, 0.2, 0.3})
    constant.points.push_back(Frequency::from_q(r));
  constant.values.assign(3, {cplx{2.0, 1.0}});
  constant.derivs.assign(3, {cplx{}});
  const auto e = c1hol_norm_estimate(constant);
  CHECK(e.n0 == Approx(std::sqrt(5.0)));
  CHECK(e.n1 == 0.0);
  CHECK(e.n2 == 0.0);

  SampledFamily identity;
  for (cplx q : {cplx{0.1, 0.0}, cplx{0.2, 0.1}, cplx{-0.3, 0.2}, cplx{0.0, -0.4}}) {
    identity.points.push_back(Frequency::from_q(q));
    identity.values.push_back({q});
    identity.derivs.push_back({1.0});
  }
  CHECK(c1hol_norm_estimate(identity).n2 < 1e-15);

  std::mt19937_64 rng(16);
  const DiophantineClass cls(6.0, 0.5, 2000);
  SampledFamily lam;
  for (const auto& f : sample_KM(cls, 200, rng, 0.3, +1)) {
    const cplx l = lambda_k(f, 1);
    lam.points.push_back(f);
    lam.values.push_back({l});
    lam.derivs.push_back({-l * l});
  }
  const auto n = c1hol_norm_estimate(lam);
  MESSAGE("lambda_1 sampled norm " << n.total());
  CHECK(n.total() <= 7.0 * 36.0);
}
