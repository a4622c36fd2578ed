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

#include "kamforge/obstruction.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

#include "kamforge/error.hpp"

namespace kamforge {

RationalFreq::RationalFreq(int p, int m) : p_(p), m_(m) {
  if (m < 1) throw InvalidArgument("RationalFreq: m must be positive");
  if (std::gcd(p, m) != 1) throw InvalidArgument("RationalFreq: gcd(p, m) != 1");
  D_.resize(static_cast<std::size_t>(m));
  lambda_.resize(static_cast<std::size_t>(m));
  lambda_ext_.resize(static_cast<std::size_t>(m));
  for (int j = 0; j < m; ++j) {
    // sin^2 has period 1 in the argument j p / m, so reduce j p mod m first.
    const long long r = (static_cast<long long>(j) * p % m + m) % m;
    const long double s =
        std::sin(std::numbers::pi_v<long double> * static_cast<long double>(r) / m);
    const long double d = -4.0L * s * s;
    D_[j] = static_cast<double>(d);
    lambda_ext_[j] = j == 0 ? 0.0L : 1.0L / d;
    lambda_[j] = static_cast<double>(lambda_ext_[j]);
  }
}

namespace {

template <typename F>
FourierSeries map_modes(const FourierSeries& phi, F&& factor) {
  FourierSeries out(phi.cutoff());
  for (int k = -phi.cutoff(); k <= phi.cutoff(); ++k)
    out.at(k) = factor(k) * phi[k];
  return out;
}

// Dense two-sided trigonometric polynomial in a chosen precision.
template <typename T>
struct Poly {
  using C = std::complex<T>;
  int N = 0;
  std::vector<C> c;

  explicit Poly(int n = 0) : N(n), c(static_cast<std::size_t>(2 * n + 1)) {}
  C operator[](int k) const {
    return (k < -N || k > N) ? C{} : c[static_cast<std::size_t>(k + N)];
  }
  C& at(int k) { return c[static_cast<std::size_t>(k + N)]; }
  T l1() const {
    T s = 0;
    for (const auto& x : c) s += std::abs(x);
    return s;
  }
};

template <typename T>
Poly<T> convolve(const Poly<T>& a, const Poly<T>& b) {
  Poly<T> out(a.N + b.N);
  for (int i = -a.N; i <= a.N; ++i) {
    const auto ai = a[i];
    if (ai == std::complex<T>{}) continue;
    for (int j = -b.N; j <= b.N; ++j) out.at(i + j) += ai * b[j];
  }
  return out;
}

template <typename T>
void accumulate(Poly<T>& acc, const Poly<T>& term) {
  if (term.N > acc.N) {
    Poly<T> wide(term.N);
    for (int k = -acc.N; k <= acc.N; ++k) wide.at(k) = acc[k];
    acc = std::move(wide);
  }
  for (int k = -term.N; k <= term.N; ++k) acc.at(k) += term[k];
}

template <typename T>
Poly<T> from_series(const FourierSeries& f) {
  Poly<T> p(f.cutoff());
  for (int k = -f.cutoff(); k <= f.cutoff(); ++k)
    p.at(k) = {static_cast<T>(f[k].real()), static_cast<T>(f[k].imag())};
  return p;
}

template <typename T>
FourierSeries to_series(const Poly<T>& p) {
  FourierSeries out(p.N);
  for (int k = -p.N; k <= p.N; ++k)
    out.at(k) = {static_cast<double>(p[k].real()), static_cast<double>(p[k].imag())};
  return out;
}

template <typename T>
T lambda_of(const RationalFreq& rf, int k) {
  if constexpr (std::is_same_v<T, long double>)
    return rf.lambda_ext(k);
  else
    return rf.lambda(k);
}

template <typename T>
void run_engine(const FourierSeries& f, const RationalFreq& rf,
                const ObstructionOptions& opt, ObstructionReport& rep) {
  using C = std::complex<T>;
  const int K = rep.K;
  const int max_order = opt.max_order;

  // f^{(r)} / r!
  std::vector<Poly<T>> fr;
  fr.push_back(from_series<T>(f));
  for (int r = 1; r < max_order; ++r) {
    Poly<T> d = fr.back();
    for (int k = -d.N; k <= d.N; ++k)
      d.at(k) *= C{0, static_cast<T>(2) * std::numbers::pi_v<T> * k} /
                 static_cast<T>(r);
    fr.push_back(std::move(d));
  }

  std::vector<Poly<T>> u;                 // u_1, u_2, ...
  std::vector<std::vector<Poly<T>>> P(1);  // P[s][r] = [U^r]_s
  for (int n = 1; n <= max_order; ++n) {
    Poly<T> g(0);
    T scale = 0;
    if (n == 1) {
      g = fr[0];
      scale = g.l1();
    } else {
      for (int r = 1; r <= n - 1; ++r) {
        const auto& pw = P[static_cast<std::size_t>(n - 1)][static_cast<std::size_t>(r)];
        accumulate(g, convolve(fr[static_cast<std::size_t>(r)], pw));
        scale += fr[static_cast<std::size_t>(r)].l1() * pw.l1();
      }
    }
    rep.orders_computed = n;
    rep.gamma_engine_table.push_back(
        {static_cast<double>(g[n * K].real()), static_cast<double>(g[n * K].imag())});

    Poly<T> kernel(g.N);
    for (int k = -g.N; k <= g.N; ++k)
      if (rf.residue(k) == 0) kernel.at(k) = g[k];
    const T knorm = kernel.l1();
    rep.kernel_norms.push_back(static_cast<double>(knorm));
    rep.scales.push_back(static_cast<double>(scale));
    if (knorm > static_cast<T>(opt.threshold) * std::max<T>(scale, 1) &&
        !rep.n_star) {
      rep.n_star = n;
      rep.witness = to_series(kernel);
      if (!opt.continue_past) break;
    }

    Poly<T> un(g.N);
    for (int k = -g.N; k <= g.N; ++k) un.at(k) = lambda_of<T>(rf, k) * g[k];
    u.push_back(un);
    rep.u.orders.push_back(to_series(un));
    if (n == max_order) break;

    // Powers of U at order n.
    std::vector<Poly<T>> Pn(static_cast<std::size_t>(n + 1));
    Pn[1] = un;
    for (int r = 2; r <= n; ++r) {
      Poly<T> acc(0);
      for (int j = 1; j <= n - r + 1; ++j)
        accumulate(acc, convolve(u[static_cast<std::size_t>(j - 1)],
                                 P[static_cast<std::size_t>(n - j)]
                                  [static_cast<std::size_t>(r - 1)]));
      Pn[static_cast<std::size_t>(r)] = std::move(acc);
    }
    P.push_back(std::move(Pn));
  }
}

}  // namespace

FourierSeries delta_star(const FourierSeries& phi, const RationalFreq& rf) {
  return map_modes(phi, [&](int k) { return rf.D(k); });
}

FourierSeries projector(const FourierSeries& phi, const RationalFreq& rf, int j) {
  if (j < 0 || j >= rf.m())
    throw InvalidArgument("projector: j must lie in [0, m)");
  return map_modes(phi, [&](int k) { return rf.residue(k) == j ? 1.0 : 0.0; });
}

FourierSeries e_star(const FourierSeries& phi, const RationalFreq& rf) {
  return map_modes(phi, [&](int k) { return rf.lambda(k); });
}

OracleTables beta_gamma_oracle(int K, const RationalFreq& rf, int up_to, cplx A) {
  if (K < 1) throw InvalidArgument("beta_gamma_oracle: K must be positive");
  if (up_to < 1) throw InvalidArgument("beta_gamma_oracle: up_to must be >= 1");
  using LD = long double;
  std::vector<LD> beta(static_cast<std::size_t>(up_to + 1), 0.0L);
  std::vector<LD> b(static_cast<std::size_t>(up_to + 1), 0.0L);
  beta[1] = 1.0L;
  for (int n = 1; n <= up_to; ++n) {
    if (n >= 2) {
      // [b^r]_{n-1} for r = 1..n-1 via repeated multiplication of the series.
      std::vector<LD> power(static_cast<std::size_t>(n), 0.0L);
      for (int j = 1; j < n; ++j) power[j] = b[j];
      LD sum = 0.0L, inv_fact = 1.0L;
      for (int r = 1; r <= n - 1; ++r) {
        inv_fact /= r;
        sum += inv_fact * power[static_cast<std::size_t>(n - 1)];
        std::vector<LD> next(static_cast<std::size_t>(n), 0.0L);
        for (int i = 1; i < n; ++i)
          for (int j = 1; i + j < n; ++j) next[i + j] += power[i] * b[j];
        power = std::move(next);
      }
      beta[n] = sum;
    }
    b[n] = -rf.lambda_ext(n * K) * beta[n];
  }
  OracleTables out;
  out.A = A;
  using CL = std::complex<LD>;
  const CL c{0.0L, -2.0L * std::numbers::pi_v<LD> * K};
  const CL a{A.real(), A.imag()};
  CL cpow = 1.0L, apow = a;
  for (int n = 1; n <= up_to; ++n) {
    out.betas.push_back(static_cast<double>(beta[n]));
    const CL g = cpow * apow * beta[n];
    out.gammas.push_back({static_cast<double>(g.real()), static_cast<double>(g.imag())});
    cpow *= c;
    apow *= a;
  }
  return out;
}

ObstructionReport obstruction_order(const FourierSeries& f,
                                    const RationalFreq& rf,
                                    const ObstructionOptions& options) {
  if (options.max_order < 1)
    throw InvalidArgument("obstruction_order: max_order must be >= 1");
  if (std::abs(f.mean()) > 0.0)
    throw InvalidArgument("obstruction_order: f must have zero mean");
  ObstructionReport rep;
  rep.p = rf.p();
  rep.m = rf.m();
  rep.u.exactness = options.exactness;
  const int K = f.degree();
  if (K == 0) throw InvalidArgument("obstruction_order: f is constant");
  FourierSeries g = f;
  if (f[K] == cplx{}) {
    // theta -> -theta turns f into -f(-x), whose top coefficient sits at +K.
    g = FourierSeries(f.cutoff());
    for (int k = -f.cutoff(); k <= f.cutoff(); ++k) g.at(k) = -f[-k];
    rep.reflected = true;
  }
  rep.K = K;
  rep.A = g[K];
  if (options.exactness == Exactness::kExtended)
    run_engine<long double>(g, rf, options, rep);
  else
    run_engine<double>(g, rf, options, rep);

  const auto oracle = beta_gamma_oracle(K, rf, rep.orders_computed, rep.A);
  rep.betas = oracle.betas;
  rep.gammas = oracle.gammas;
  const int n = rep.n_star.value_or(rep.orders_computed);
  rep.gamma_engine = rep.gamma_engine_table[static_cast<std::size_t>(n - 1)];
  rep.gamma_oracle = rep.gammas[static_cast<std::size_t>(n - 1)];
  const double denom = std::abs(rep.gamma_oracle);
  rep.relative_gap =
      denom > 0.0 ? std::abs(rep.gamma_engine - rep.gamma_oracle) / denom
                  : std::abs(rep.gamma_engine);
  return rep;
}

double oracle_consistency(const FourierSeries& f, const RationalFreq& rf,
                          int up_to, Exactness exactness) {
  ObstructionOptions opt;
  opt.max_order = up_to;
  opt.continue_past = true;
  opt.exactness = exactness;
  const auto rep = obstruction_order(f, rf, opt);
  double gap = 0.0;
  for (int n = 1; n <= rep.orders_computed; ++n) {
    const cplx o = rep.gammas[static_cast<std::size_t>(n - 1)];
    if (std::abs(o) == 0.0) continue;
    const cplx e = rep.gamma_engine_table[static_cast<std::size_t>(n - 1)];
    gap = std::max(gap, std::abs(e - o) / std::abs(o));
  }
  return gap;
}

}  // namespace kamforge
