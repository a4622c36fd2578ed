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

#include "kamforge/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <numeric>
#include <random>
#include <sstream>

#include "kamforge/continuation.hpp"
#include "kamforge/error.hpp"
#include "kamforge/fourier.hpp"
#include "kamforge/frequency.hpp"
#include "kamforge/io.hpp"
#include "kamforge/kam.hpp"
#include "kamforge/obstruction.hpp"
#include "kamforge/operators.hpp"
#include "kamforge/sweep.hpp"

namespace kamforge::verify {

namespace {

using Clock = std::chrono::steady_clock;

const double kGoldenOmega = (std::sqrt(5.0) - 1.0) / 2.0;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

CheckResult result(const std::string& id, const std::string& name, bool pass,
                   const std::string& detail) {
  return {id, name, pass, detail, 0.0};
}

FourierSeries random_series(std::mt19937_64& rng, int n, double decay,
                            double amplitude = 1.0) {
  std::normal_distribution<double> g;
  FourierSeries s(n);
  for (int k = -n; k <= n; ++k)
    s.at(k) = amplitude * std::exp(-decay * std::abs(k)) * cplx{g(rng), g(rng)};
  return s;
}

FourierSeries real_symmetric(std::mt19937_64& rng, int n, double decay,
                             double amplitude = 1.0) {
  auto s = random_series(rng, n, decay, amplitude);
  s.at(0) = s[0].real();
  for (int k = 1; k <= n; ++k) s.at(-k) = std::conj(s[k]);
  return s;
}

// 1 + p with deg p = 3 and |p| <= 0.3 on |Im theta| <= 2 |Im omega| + 0.3, so
// A, its shifts by omega and the quotients built from them stay analytic on a
// strip wider than |Im omega|.
FourierSeries random_invertible(std::mt19937_64& rng, const Frequency& freq) {
  auto a = random_series(rng, 3, 0.0);
  a.at(0) = 0.0;
  const double y = 2.0 * std::abs(freq.omega().imag()) + 0.3;
  double bound = 0.0;
  for (int k = -3; k <= 3; ++k)
    bound += std::abs(a[k]) * std::exp(kTwoPi * std::abs(k) * y);
  a *= 0.3 / bound;
  a.at(0) = 1.0;
  return a;
}

std::vector<Frequency> km_samples(std::mt19937_64& rng, std::size_t count,
                                  double max_extra) {
  const DiophantineClass cls(6.0, 0.5, 2000);
  return sample_KM(cls, count, rng, max_extra);
}

double rel_l1(const FourierSeries& a, const FourierSeries& b, double scale) {
  const int n = std::max(a.cutoff(), b.cutoff());
  return (a.extended(n) - b.extended(n)).l1_norm() / std::max(scale, 1e-300);
}

// ---------------------------------------------------------------- acceptance

CheckResult golden_benchmark() {
  const auto t0 = Clock::now();
  SolverConfig cfg;
  cfg.cutoff = 256;
  const auto curve = solve_curve(FourierSeries::cosine(1),
                                 Frequency::from_omega(kGoldenOmega), 0.05, cfg);
  const double dr = dynamical_residual(curve, 1024);
  const double secs = seconds_since(t0);
  const bool pass = curve.report.iterations <= 8 && dr < 1e-10 && secs < 5.0;
  return result("1", "golden-mean benchmark", pass,
                "steps " + std::to_string(curve.report.iterations) +
                    " (<= 8), dynamical residual " + sci(dr) +
                    " (< 1e-10), time " + sci(secs) + " s (< 5)");
}

CheckResult quadratic_convergence() {
  SolverConfig cfg;
  cfg.cutoff = 256;
  const auto curve = solve_curve(FourierSeries::cosine(1),
                                 Frequency::from_omega(kGoldenOmega), 0.05, cfg);
  const auto& h = curve.report.residual_history;
  const double slope = curve.report.quadratic_fit_slope;
  std::string hist;
  for (double r : h) hist += (hist.empty() ? "" : " ") + sci(r);
  return result("2", "quadratic convergence", slope >= 1.8 && slope <= 2.2,
                "fitted slope " + sci(slope) + " (in [1.8, 2.2]); residuals " +
                    hist);
}

CheckResult three_method_agreement() {
  const auto t0 = Clock::now();
  const auto f = FourierSeries::cosine(1);
  const auto a = crosscheck(f, Frequency::from_q(0.3), 0.05,
                            {Method::kNewton, Method::kPicard, Method::kTaylor0});
  const auto b = crosscheck(f, Frequency::from_omega({0.5, 0.5}), 0.05,
                            {Method::kNewton, Method::kPicard});
  const double secs = seconds_since(t0);
  auto diff = [](const CrosscheckReport& r, const std::string& key) {
    const auto it = r.differences.find(key);
    return it == r.differences.end() ? INFINITY : it->second;
  };
  const double pt = diff(a, "picard|taylor0");
  const double np = diff(a, "newton|picard");
  const double np2 = diff(b, "newton|picard");
  const bool pass = pt < 1e-8 && np < 1e-10 && np2 < 1e-10 && secs < 10.0;
  return result("3", "three-method agreement", pass,
                "q=0.3: picard-taylor0 " + sci(pt) + " (< 1e-8), picard-newton " +
                    sci(np) + " (< 1e-10); omega=1/2+0.5i: newton-picard " +
                    sci(np2) + " (< 1e-10); time " + sci(secs) + " s (< 10)");
}

struct IdentityStats {
  double factorization = 0.0;
  double zero_mean = 0.0;
  double linear = 0.0;
  double nabla_gamma = 0.0;
  double shift_gamma = 0.0;
  double delta_split = 0.0;
  double gamma_eq = 0.0;
  int instances = 0;
};

IdentityStats identity_suites(std::uint64_t seed, int instances) {
  std::mt19937_64 rng(seed);
  IdentityStats s;
  const int n = 16;
  const auto freqs = km_samples(rng, static_cast<std::size_t>(instances), 0.1);
  for (const auto& freq : freqs) {
    const auto A = random_invertible(rng, freq);
    const auto h = random_series(rng, 8, 0.3);
    const auto u = random_series(rng, n, 0.6, 0.05);
    const auto E = random_series(rng, 8, 0.3);
    const auto phi = random_series(rng, n, 0.3);
    const auto f = random_series(rng, 4, 0.5);
    const cplx eps{0.05, 0.01};

    const double fact_scale =
        A.l1_norm() * apply(MultiplierKind::kDelta, h, freq).l1_norm() +
        h.l1_norm() * apply(MultiplierKind::kDelta, A, freq).l1_norm();
    s.factorization =
        std::max(s.factorization, factorization_defect(A, h, freq) / fact_scale);

    FourierSeries f0 = f;
    f0.at(0) = 0.0;
    const auto Eu = error_functional(u, f0, freq, eps);
    const double zm_scale =
        (FourierSeries::constant(1.0) + fourier::derivative(u)).l1_norm() *
        Eu.l1_norm();
    s.zero_mean =
        std::max(s.zero_mean, mean_identity_residual(u, f0, freq, eps) / zm_scale);

    const int wc = 64;
    const OperatorSet ops(freq, wc);
    const auto A_wide = A.extended(wc);
    const auto Ap = ops.apply(MultiplierKind::kShiftPlus, A_wide);
    const auto Am = ops.apply(MultiplierKind::kShiftMinus, A_wide);
    const auto sol = linearized_solve_tracked(A_wide, Ap, Am, E.extended(wc), ops);
    const auto Aw = fourier::product(A, sol.w);
    const double lin_scale =
        A.l1_norm() *
        (E.l1_norm() +
         (fourier::product(Ap, sol.w_plus) + fourier::product(Am, sol.w_minus))
             .l1_norm() +
         2.0 * Aw.l1_norm() + Aw.l1_norm() * (Ap + Am).l1_norm() / A.l1_norm());
    double lin = linearized_defect(A_wide, Ap, Am, E, sol) / lin_scale;
    if (sol.w.mean() != cplx{} ||
        linearized_solve(A, E, freq).mean() != cplx{})
      lin = INFINITY;
    s.linear = std::max(s.linear, lin);

    auto apply_k = [&](MultiplierKind k, const FourierSeries& x) {
      return apply(k, x, freq);
    };
    using K = MultiplierKind;
    FourierSeries centered = phi;
    centered.at(0) = 0.0;
    s.nabla_gamma = std::max(
        s.nabla_gamma,
        rel_l1(apply_k(K::kNabla, apply_k(K::kGamma, phi)), centered,
               phi.l1_norm()));
    const auto gm = apply_k(K::kGammaMinus, phi);
    s.shift_gamma = std::max(
        s.shift_gamma, rel_l1(apply_k(K::kShiftPlus, apply_k(K::kGamma, phi)), gm,
                              std::max(gm.l1_norm(), phi.l1_norm())));
    const auto d = apply_k(K::kDelta, phi);
    const double dscale = std::max(d.l1_norm(), phi.l1_norm());
    s.delta_split = std::max(
        {s.delta_split,
         rel_l1(apply_k(K::kNabla, apply_k(K::kNablaMinus, phi)), d, dscale),
         rel_l1(apply_k(K::kNablaMinus, apply_k(K::kNabla, phi)), d, dscale)});
    const auto eq = apply_k(K::kEq, phi);
    s.gamma_eq = std::max(
        s.gamma_eq, rel_l1(apply_k(K::kGamma, apply_k(K::kGammaMinus, phi)), eq,
                           std::max(eq.l1_norm(), phi.l1_norm())));
    ++s.instances;
  }
  return s;
}

CheckResult exact_identities() {
  const auto s = identity_suites(7, 24);
  const bool pass = s.instances >= 20 && s.factorization < 1e-12 &&
                    s.zero_mean < 1e-11 && s.linear < 1e-11 &&
                    s.nabla_gamma < 1e-13 && s.shift_gamma < 1e-13 &&
                    s.delta_split < 1e-13 && s.gamma_eq < 1e-13;
  return result("4", "exact-identity suites", pass,
                std::to_string(s.instances) + " instances; factorization " +
                    sci(s.factorization) + ", zero-mean " + sci(s.zero_mean) +
                    ", linearized solve " + sci(s.linear) + ", nabla gamma " +
                    sci(s.nabla_gamma) + ", shifted gamma " +
                    sci(s.shift_gamma) + ", delta split " + sci(s.delta_split) +
                    ", gamma gamma_minus " + sci(s.gamma_eq));
}

CheckResult small_divisor_bounds() {
  std::mt19937_64 rng(11);
  const DiophantineClass cls(6.0, 0.5);
  const auto freqs = sample_KM(cls, 50, rng);
  int pairs = 0, violations = 0;
  double worst = 0.0;
  for (const auto& fr : freqs) {
    try {
      const auto rep = check_small_divisor_bound(fr, cls, 100);
      worst = std::max(worst, rep.max_ratio);
    } catch (const BoundViolation&) {
      ++violations;
    }
    pairs += 200;
  }
  std::uniform_real_distribution<double> re(-3.0, 3.0), im(-0.5, 0.5);
  int exp_violations = 0;
  const int exp_samples = 10000;
  for (int i = 0; i < exp_samples; ++i) {
    try {
      check_exp_dist_bound({re(rng), im(rng)});
    } catch (const BoundViolation&) {
      ++exp_violations;
    }
  }
  const bool pass = pairs >= 10000 && violations == 0 && exp_violations == 0;
  return result("5", "small-divisor bounds", pass,
                std::to_string(pairs) + " (q, k) pairs, " +
                    std::to_string(violations) + " violations, max ratio " +
                    sci(worst) + "; " + std::to_string(exp_samples) +
                    " band samples, " + std::to_string(exp_violations) +
                    " violations");
}

CheckResult taylor_structure() {
  std::mt19937_64 rng(13);
  const cplx eps = 0.05;
  const int orders = 40;
  double top = 0.0, inverse = 0.0, tail = 0.0;
  bool cutoffs = true;
  for (int trial = 0; trial < 5; ++trial) {
    const int degree = 1 + trial;
    const auto f = random_series(rng, degree, 0.3, 0.5);
    const auto d = taylor0_recursion(f, eps, orders);
    for (int n = 1; n <= orders; ++n) {
      const auto& un = d.orders[static_cast<std::size_t>(n - 1)];
      cutoffs = cutoffs && un.cutoff() == n;
      tail = std::max(tail, d.support_tails[static_cast<std::size_t>(n - 1)]);
      top = std::max({top, std::abs(un[n] - eps * f[n]),
                      std::abs(un[-n] - eps * f[-n])});
    }
    const auto inv = inverse_scattering(d);
    for (int k = -orders; k <= orders; ++k)
      if (k != 0) inverse = std::max(inverse, std::abs(inv[k] - eps * f[k]));
  }
  const bool pass = cutoffs && tail == 0.0 && top < 1e-14 && inverse < 1e-12;
  return result("6", "Taylor-at-0 structure", pass,
                "40 orders x 5 f of degree 1..5; support tail " + sci(tail) +
                    " (exact 0), top law " + sci(top) +
                    " (< 1e-14), inverse scattering " + sci(inverse) +
                    " (< 1e-12)");
}

CheckResult obstruction_orders() {
  const auto t0 = Clock::now();
  const auto f = FourierSeries::cosine(1);
  bool pass = true;
  std::string detail;
  for (auto [p, m] : std::vector<std::pair<int, int>>{{1, 2}, {1, 3}, {2, 5}, {1, 7}}) {
    const auto rep = obstruction_order(f, RationalFreq(p, m));
    const int ns = rep.n_star.value_or(-1);
    bool positive = ns > 0;
    for (int n = 1; n <= ns && n <= static_cast<int>(rep.betas.size()); ++n)
      positive = positive && rep.betas[static_cast<std::size_t>(n - 1)] > 0.0;
    const bool ok = ns == m && positive && rep.relative_gap <= 1e-12;
    pass = pass && ok;
    detail += std::to_string(p) + "/" + std::to_string(m) + ": n*=" +
              std::to_string(ns) + (positive ? " beta>0" : " beta<=0") +
              " gap " + sci(rep.relative_gap) + "; ";
  }
  const double secs = seconds_since(t0);
  pass = pass && secs < 5.0;
  return result("7", "obstruction order", pass, detail + "time " + sci(secs) + " s (< 5)");
}

CheckResult set_geometry() {
  double prev = INFINITY;
  bool pass = true;
  std::string detail;
  for (double M : {6.0, 12.0, 24.0}) {
    const DiophantineClass cls(M, 0.5, 10000);
    const double meas = total_gap_measure(cls);
    const bool bounded = M > 12.0 || meas <= cls.gap_measure_bound();
    pass = pass && bounded && meas < prev;
    prev = meas;
    detail += "M=" + sci(M) + ": " + sci(meas) + " (bound " +
              sci(cls.gap_measure_bound()) + "); ";
  }
  return result("8", "set geometry", pass, detail + "decreasing in M");
}

CheckResult symmetry() {
  const double refl = conjugate_reflection_check(
      FourierSeries::cosine(1), Frequency::from_omega({0.5, 0.5}), 0.05);
  const auto curve = solve_curve(FourierSeries::cosine(1),
                                 Frequency::from_omega(kGoldenOmega), 0.05);
  double imag = 0.0;
  for (cplx v : fourier::to_grid(curve.u, 1024))
    imag = std::max(imag, std::abs(v.imag()));
  const bool pass = refl < 1e-10 && imag < 1e-12;
  return result("9", "symmetry", pass,
                "conjugate-reflection defect " + sci(refl) +
                    " (< 1e-10); max |Im u| on real theta " + sci(imag) +
                    " (< 1e-12)");
}

CheckResult multi_class() {
  const auto freq = Frequency::from_q(0.3);
  const auto f = FourierSeries::cosine(1);
  SolverConfig a, b;
  a.diophantine_class = DiophantineClass(6.0, 0.5);
  b.diophantine_class = DiophantineClass(12.0, 0.5);
  const bool members =
      in_KM(freq, *a.diophantine_class) && in_KM(freq, *b.diophantine_class);
  const auto ua = solve_curve(f, freq, 0.05, a).u;
  const auto ub = solve_curve(f, freq, 0.05, b).u;
  const double d = fourier::sup_distance(ua, ub);
  return result("10", "multi-M consistency", members && d < 1e-12,
                std::string("q=0.3 in K_6 and K_12: ") + (members ? "yes" : "no") +
                    "; sup difference " + sci(d) + " (< 1e-12)");
}

SweepConfig determinism_grid() {
  SweepConfig cfg;
  cfg.solver.cutoff = 64;
  return cfg;
}

CheckResult determinism() {
  std::string first;
  bool same = true;
  std::string detail;
  for (int w : {1, 4, 8}) {
    auto cfg = determinism_grid();
    cfg.workers = w;
    const auto res = run_sweep(cfg);
    auto text = sweep_jsonl(res) + io::dump(io::to_json(res.family));
    if (first.empty()) {
      first = std::move(text);
      detail = std::to_string(res.points.size()) + " points, " +
               std::to_string(res.converged_count) + " converged; ";
    } else {
      same = same && text == first;
    }
  }
  return result("11", "sweep determinism", same,
                detail + (same ? "identical" : "differs") +
                    " output for workers 1, 4, 8");
}

// ---------------------------------------------------------------- properties

CheckResult fourier_properties(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  double fft_gap = 0.0, submult = 0.0, deriv = 0.0;
  bool compose_exact = true;
  for (int na = 0; na <= 32; ++na)
    for (int nb : {0, 1, 7, 16, 32}) {
      const auto a = random_series(rng, na, 0.0);
      const auto b = random_series(rng, nb, 0.0);
      fft_gap = std::max(fft_gap, rel_l1(fourier::product_fft(a, b),
                                         fourier::product_direct(a, b),
                                         a.l1_norm() * b.l1_norm()));
    }
  for (int t = 0; t < 20; ++t) {
    const auto a = random_series(rng, 12, 0.4);
    const auto b = random_series(rng, 9, 0.4);
    const double r = 0.05 * (t % 4);
    submult = std::max(submult, fourier::strip_norm_bound(fourier::product(a, b), r) /
                                    (fourier::strip_norm_bound(a, r) *
                                     fourier::strip_norm_bound(b, r)));
    const auto f = random_series(rng, 10, 0.3);
    const auto c = fourier::compose_id_plus(f, FourierSeries(10)).series;
    for (int k = -10; k <= 10; ++k) compose_exact = compose_exact && c[k] == f[k];
    const auto d = fourier::derivative(f, 1);
    for (int k = -10; k <= 10; ++k)
      deriv = std::max(deriv, std::abs(d[k] - cplx{0.0, kTwoPi * k} * f[k]));
  }
  const bool pass =
      fft_gap < 1e-13 && submult <= 1.0 + 1e-12 && compose_exact && deriv == 0.0;
  return result("P1", "fourier invariants", pass,
                "FFT vs direct " + sci(fft_gap) + ", strip ratio " + sci(submult) +
                    ", compose(f, 0) exact " + (compose_exact ? "yes" : "no") +
                    ", derivative law " + sci(deriv));
}

CheckResult frequency_properties(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const DiophantineClass cls(6.0, 0.5, 2000);
  double lam = 0.0, chart = 0.0, margin = 0.0;
  bool amc = true;
  int exp_bad = 0, comp_bad = 0;
  for (const auto& fr : sample_KM(cls, 60, rng, 0.2)) {
    const cplx w = fr.omega();
    for (int k = -40; k <= 40; ++k) {
      if (k == 0) continue;
      try {
        lam = std::max(lam, std::abs(lambda_k(fr, k) * fr.q_pow_minus_one(k) - 1.0));
      } catch (const OverflowRisk&) {
      }
      const cplx a = lambda_k(fr, k);
      const cplx b = lambda_k(Frequency::from_omega(-w), k);
      chart = std::max(chart, std::abs(a - (-1.0 - b)) / std::max(1.0, std::abs(a)));
    }
    amc = amc && in_AMC(w, cls) == in_AMC(std::conj(w), cls) &&
          in_AMC(w, cls) == in_AMC(-w, cls);
  }
  std::uniform_real_distribution<double> unit(0.0, 1.0), band(-0.5, 0.5);
  for (int i = 0; i < 200; ++i) {
    const double x = unit(rng);
    const double m0 = dioph_real_margin(x, cls).margin;
    margin = std::max({margin, std::abs(dioph_real_margin(x + 1.0, cls).margin - m0) / m0,
                       std::abs(dioph_real_margin(-x, cls).margin - m0) / m0});
  }
  for (int i = 0; i < 10000; ++i) {
    const cplx z{4.0 * band(rng), band(rng)};
    try {
      check_exp_dist_bound(z);
    } catch (const BoundViolation&) {
      ++exp_bad;
    }
    const double x = z.real() + std::abs(z.imag()) * 2.0 * band(rng);
    if (dist_to_integers(z) < dist_to_integers(x) / std::numbers::sqrt2 - 1e-15)
      ++comp_bad;
  }
  const bool pass = lam < 1e-14 && chart < 1e-14 && margin < 1e-6 && amc &&
                    exp_bad == 0 && comp_bad == 0;
  return result("P2", "frequency invariants", pass,
                "lambda (q^k - 1) " + sci(lam) + ", chart identity " + sci(chart) +
                    ", margin symmetry " + sci(margin) + ", A_M^C symmetry " +
                    (amc ? "yes" : "no") + ", band violations " +
                    std::to_string(exp_bad) + "/" + std::to_string(comp_bad));
}

CheckResult operator_properties(std::uint64_t seed) {
  const auto s = identity_suites(seed, 30);
  std::mt19937_64 rng(seed + 1);
  double expansion = 0.0, reality = 0.0;
  for (double r : {0.1, 0.3, 0.5}) {
    const auto freq = Frequency::from_q(std::polar(r, kTwoPi * kGoldenOmega));
    const auto phi = random_series(rng, 12, 0.2);
    FourierSeries partial(12);
    cplx qn = 1.0;
    for (int n = 1; n <= 40; ++n) {
      qn *= freq.q();
      partial += qn * e_n(phi, n);
    }
    // sum_{n > 40} n r^n ||phi||_1
    double bound = 0.0, rn = std::pow(r, 41);
    for (int n = 41; n < 2000 && rn > 0.0; ++n, rn *= r) bound += n * rn;
    bound *= phi.l1_norm();
    const double gap = (apply(MultiplierKind::kEq, phi, freq) - partial).l1_norm();
    expansion = std::max(expansion, gap / std::max(bound, 1e-300) *
                                        (gap > 1e-15 ? 1.0 : 0.0));
  }
  for (const auto& fr : km_samples(rng, 20, 0.2)) {
    const auto phi = real_symmetric(rng, 12, 0.3);
    const auto a = apply(MultiplierKind::kGamma, phi, fr);
    const auto b = apply(MultiplierKind::kGamma, phi, fr.reflected());
    for (int k = -12; k <= 12; ++k)
      reality = std::max(reality, std::abs(std::conj(a[k]) - b[-k]) /
                                      std::max(1.0, std::abs(a[k])));
  }
  const bool pass = s.nabla_gamma < 1e-13 && s.shift_gamma < 1e-13 &&
                    s.delta_split < 1e-13 && s.gamma_eq < 1e-13 &&
                    expansion <= 1.0 && reality < 1e-13;
  return result("P3", "operator invariants", pass,
                "nabla gamma " + sci(s.nabla_gamma) + ", shifted gamma " +
                    sci(s.shift_gamma) + ", delta split " + sci(s.delta_split) +
                    ", gamma gamma_minus " + sci(s.gamma_eq) +
                    ", E_q expansion gap / tail bound " + sci(expansion) +
                    ", real symmetry " + sci(reality));
}

CheckResult kam_properties(std::uint64_t seed) {
  const auto s = identity_suites(seed + 2, 24);
  const auto f = FourierSeries::cosine(1);
  const auto freq = Frequency::from_omega(kGoldenOmega);
  const cplx eps = 0.05;
  SolverConfig cfg;
  const auto curve = solve_curve(f, freq, eps, cfg);
  const auto& h = curve.report.residual_history;
  double C = 0.0;
  for (std::size_t i = 0; i + 1 < h.size(); ++i)
    if (h[i + 1] > 1e-13) C = std::max(C, h[i + 1] / (h[i] * h[i]));
  const double slope = curve.report.quadratic_fit_slope;
  double imag = 0.0;
  for (cplx v : fourier::to_grid(curve.u, 1024))
    imag = std::max(imag, std::abs(v.imag()));

  // Step-residual identity along the Newton iterates from u = 0.
  double step = 0.0;
  FourierSeries u(kDefaultCutoff);
  const double scale = std::abs(eps) * f.l1_norm();
  for (int it = 0; it < 6; ++it) {
    const auto [defect, norm] = step_residual_defect(u, f, freq, eps);
    step = std::max(step, defect / scale);
    if (norm < 1e-13) break;
    u = newton_step(u, f, freq, eps).first;
  }
  const bool pass = s.factorization < 1e-12 && s.zero_mean < 1e-11 &&
                    s.linear < 1e-11 && slope >= 1.8 && slope <= 2.2 &&
                    imag < 1e-12 && step < 1e-10;
  return result("P4", "kam invariants", pass,
                "factorization " + sci(s.factorization) + ", zero-mean " +
                    sci(s.zero_mean) + ", linearized solve " + sci(s.linear) +
                    ", r_{n+1} <= C r_n^2 with C = " + sci(C) + ", slope " +
                    sci(slope) + " (in [1.8, 2.2]), |Im u| " + sci(imag) +
                    ", step identity " + sci(step));
}

CheckResult continuation_properties(std::uint64_t) {
  const auto f = FourierSeries::cosine(1);
  double beta = 0.0, pt = 0.0, pn = 0.0;
  std::string worst;
  for (double r : {0.2, 0.3, 0.5})
    for (double arg : {0.0, kTwoPi * kGoldenOmega})
      for (double eps : {0.01, 0.05}) {
        const auto freq = Frequency::from_q(std::polar(r, arg));
        const auto rep = crosscheck(f, freq, eps,
                                    {Method::kNewton, Method::kPicard, Method::kTaylor0});
        const double d = rep.differences.at("picard|taylor0");
        if (d > pt) {
          pt = d;
          worst = "|q|=" + sci(r) + " arg=" + sci(arg) + " eps=" + sci(eps);
        }
        pn = std::max(pn, rep.differences.at("newton|picard"));
        beta = std::max(beta, std::abs(picard_solve(f, freq, eps).report.beta));
      }
  const auto d = taylor0_recursion(f, 0.05, 40);
  const double radius = root_test_radius(d);
  const bool pass = beta < 1e-11 && pt < 1e-8 && pn < 1e-10;
  return result("P5", "continuation invariants", pass,
                "|beta| " + sci(beta) + " (< 1e-11), picard-taylor0 " + sci(pt) +
                    " (< 1e-8, worst at " + worst + "), picard-newton " +
                    sci(pn) + " (< 1e-10) over the 12-point grid; " +
                    "root-test radius " + sci(radius) + " so |q| < " +
                    sci(1.0 / radius) + " (logged; e^{-2 pi/6} = " +
                    sci(std::exp(-kTwoPi / 6.0)) + ")");
}

CheckResult obstruction_properties(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  double split = 0.0, range = 0.0, consistency = 0.0;
  bool law = true, positive = true;
  std::string mismatch;
  for (int m = 1; m <= 7; ++m)
    for (int p = 0; p < m; ++p) {
      if (std::gcd(p, m) != 1) continue;
      const RationalFreq rf(p, m);
      const auto phi = random_series(rng, 15, 0.1);
      const auto id = delta_star(e_star(phi, rf), rf) + projector(phi, rf, 0);
      split = std::max(split, rel_l1(id, phi, phi.l1_norm()));
      range = std::max(range, projector(delta_star(phi, rf), rf, 0).l1_norm());
      if (m == 1) continue;
      for (int K : {1, 2, 3}) {
        const auto f = FourierSeries::cosine(K);
        const int expected = m / std::gcd(K, m);
        ObstructionOptions opt;
        opt.max_order = 8;
        const auto rep = obstruction_order(f, rf, opt);
        if (rep.n_star.value_or(-1) != expected) {
          law = false;
          mismatch += " K=" + std::to_string(K) + " p/m=" + std::to_string(p) +
                      "/" + std::to_string(m);
        }
        for (int n = 1; n <= rep.n_star.value_or(0); ++n)
          positive = positive && rep.betas[static_cast<std::size_t>(n - 1)] > 0.0;
        consistency = std::max(consistency, rep.relative_gap);
        if (rep.n_star)
          consistency = std::max(consistency, oracle_consistency(f, rf, *rep.n_star));
      }
    }
  // Picard near E(1/3), logged only.
  std::string approach;
  const double arg = kTwoPi / 3.0;
  for (double r : {0.8, 0.85, 0.9, 0.93, 0.95}) {
    try {
      PicardConfig cfg;
      cfg.cutoff = 64;
      const auto res = picard_solve(FourierSeries::cosine(1),
                                    Frequency::from_q(std::polar(r, arg)), 0.05, cfg);
      approach += " " + sci(r) + ":" + std::to_string(res.report.iterations);
    } catch (const Error&) {
      approach += " " + sci(r) + ":fail";
    }
  }
  const bool pass = split < 1e-14 && range == 0.0 && law && positive &&
                    consistency < 1e-12;
  return result("P6", "obstruction invariants", pass,
                "split identity " + sci(split) + ", kernel of range " +
                    sci(range) + ", order law " + (law ? "holds" : "fails:" + mismatch) +
                    ", betas positive " + (positive ? "yes" : "no") +
                    ", oracle gap " + sci(consistency) +
                    "; Picard iterations toward q = e^{2 pi i/3}:" + approach);
}

bool same_series(const FourierSeries& a, const FourierSeries& b) { return a == b; }

CheckResult io_properties(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  bool ok = true;
  auto round = [](const io::json& j) { return io::json::parse(j.dump()); };
  const auto s = random_series(rng, 20, 0.1);
  ok = ok && same_series(io::series_from_json(round(io::to_json(s))), s);
  const auto curve = solve_curve(FourierSeries::cosine(1),
                                 Frequency::from_omega({0.5, 0.5}), 0.05);
  const auto c2 = io::curve_from_json(round(io::to_json(curve, dynamical_residual(curve))));
  ok = ok && c2.u == curve.u && c2.v == curve.v && c2.u_plus == curve.u_plus &&
       c2.eps == curve.eps && c2.freq.omega() == curve.freq.omega() &&
       c2.report.residual_history == curve.report.residual_history;
  const auto d = taylor0_recursion(FourierSeries::cosine(1), 0.05, 10);
  const auto d2 = io::taylor_from_json(round(io::to_json(d)));
  ok = ok && d2.orders == d.orders && d2.eps == d.eps && d2.f_ref == d.f_ref;
  const auto rep = obstruction_order(FourierSeries::cosine(1), RationalFreq(2, 5));
  const auto r2 = io::obstruction_from_json(round(io::to_json(rep)));
  ok = ok && r2.n_star == rep.n_star && r2.gamma_engine == rep.gamma_engine &&
       r2.betas == rep.betas && r2.gammas == rep.gammas && r2.u.orders == rep.u.orders;
  const auto g = export_set_geometry(DiophantineClass(6.0, 0.5, 500));
  const auto g2 = io::geometry_from_json(round(io::to_json(g)));
  ok = ok && g2.gaps == g.gaps && g2.boundary_q == g.boundary_q &&
       g2.total_gap_measure == g.total_gap_measure;
  return result("P7", "serialization round-trip", ok,
                ok ? "series, curve, Taylor data, obstruction report and geometry "
                     "re-parse exactly"
                   : "a re-parsed artifact differs");
}

}  // namespace

std::vector<Check> acceptance_checks() {
  return {
      {"1", "golden-mean benchmark", golden_benchmark},
      {"2", "quadratic convergence", quadratic_convergence},
      {"3", "three-method agreement", three_method_agreement},
      {"4", "exact-identity suites", exact_identities},
      {"5", "small-divisor bounds", small_divisor_bounds},
      {"6", "Taylor-at-0 structure", taylor_structure},
      {"7", "obstruction order", obstruction_orders},
      {"8", "set geometry", set_geometry},
      {"9", "symmetry", symmetry},
      {"10", "multi-M consistency", multi_class},
      {"11", "sweep determinism", determinism},
  };
}

std::vector<Check> property_checks(std::uint64_t seed) {
  return {
      {"P1", "fourier invariants", [seed] { return fourier_properties(seed); }},
      {"P2", "frequency invariants", [seed] { return frequency_properties(seed); }},
      {"P3", "operator invariants", [seed] { return operator_properties(seed); }},
      {"P4", "kam invariants", [seed] { return kam_properties(seed); }},
      {"P5", "continuation invariants", [seed] { return continuation_properties(seed); }},
      {"P6", "obstruction invariants", [seed] { return obstruction_properties(seed); }},
      {"P7", "serialization round-trip", [seed] { return io_properties(seed); }},
  };
}

std::vector<CheckResult> run(const std::vector<Check>& checks) {
  std::vector<CheckResult> out;
  for (const auto& c : checks) {
    const auto t0 = Clock::now();
    CheckResult r;
    try {
      r = c.run();
    } catch (const std::exception& e) {
      r = {c.id, c.name, false, std::string("exception: ") + e.what(), 0.0};
    }
    r.seconds = seconds_since(t0);
    out.push_back(std::move(r));
  }
  return out;
}

std::string format(const std::vector<CheckResult>& results) {
  std::ostringstream out;
  for (const auto& r : results) {
    char secs[32];
    std::snprintf(secs, sizeof secs, "%.2f", r.seconds);
    out << (r.pass ? "PASS " : "FAIL ") << r.id << " " << r.name << " (" << secs
        << " s): " << r.detail << "\n";
  }
  return out.str();
}

bool all_pass(const std::vector<CheckResult>& results) {
  return std::all_of(results.begin(), results.end(),
                     [](const CheckResult& r) { return r.pass; });
}

}  // namespace kamforge::verify
