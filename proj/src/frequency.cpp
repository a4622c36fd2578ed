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

#include "kamforge/frequency.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <queue>
#include <sstream>

#include "kamforge/error.hpp"

namespace kamforge {

const char* to_string(Chart chart) {
  return chart == Chart::kInner ? "inner" : "outer";
}

// ---------------------------------------------------------------- Frequency

Frequency Frequency::from_omega(cplx omega) {
  if (!std::isfinite(omega.real()) || !std::isfinite(omega.imag()))
    throw InvalidArgument("from_omega: omega must be finite");
  Frequency f;
  f.omega_ = {omega.real() - std::floor(omega.real()), omega.imag()};
  f.chart_ = omega.imag() >= 0.0 ? Chart::kInner : Chart::kOuter;
  f.log_scale_ = kTwoPi * omega.imag();
  return f;
}

Frequency Frequency::from_q(cplx q) {
  if (q == cplx{}) return zero();
  if (std::isinf(q.real()) || std::isinf(q.imag())) return infinity();
  if (std::isnan(q.real()) || std::isnan(q.imag()))
    throw InvalidArgument("from_q: q is NaN");
  return from_omega({std::arg(q) / kTwoPi, -std::log(std::abs(q)) / kTwoPi});
}

Frequency Frequency::zero() {
  Frequency f;
  f.special_ = Special::kZero;
  f.chart_ = Chart::kInner;
  f.log_scale_ = std::numeric_limits<double>::infinity();
  return f;
}

Frequency Frequency::infinity() {
  Frequency f;
  f.special_ = Special::kInfinity;
  f.chart_ = Chart::kOuter;
  f.log_scale_ = -std::numeric_limits<double>::infinity();
  return f;
}

cplx Frequency::omega() const {
  if (is_special())
    throw InvalidArgument("Frequency::omega: q = 0 and q = inf have no omega");
  return omega_;
}

cplx Frequency::q() const {
  if (is_zero()) return {};
  if (is_infinity()) return {std::numeric_limits<double>::infinity(), 0.0};
  return expi2pi(omega_);
}

cplx Frequency::coordinate() const {
  if (is_special()) return {};
  return chart_ == Chart::kInner ? expi2pi(omega_) : expi2pi(-omega_);
}

cplx Frequency::reduced_phase(int k) const {
  if (is_special())
    throw InvalidArgument("Frequency::reduced_phase: special point");
  const double kk = k;
  const double n = std::nearbyint(kk * omega_.real());
  return {std::fma(kk, omega_.real(), -n), kk * omega_.imag()};
}

namespace {

void check_power(double log_modulus, int k) {
  if (log_modulus > kExponentCap) {
    std::ostringstream msg;
    msg << "q^" << k << " has log-modulus " << log_modulus
        << " beyond the exponent cap";
    throw OverflowRisk(msg.str());
  }
}

[[noreturn]] void special_overflow(int k) {
  std::ostringstream msg;
  msg << "q^" << k << " is infinite at this special frequency";
  throw OverflowRisk(msg.str());
}

}  // namespace

cplx Frequency::q_pow(int k) const {
  if (k == 0) return 1.0;
  if (is_zero()) {
    if (k > 0) return 0.0;
    special_overflow(k);
  }
  if (is_infinity()) {
    if (k < 0) return 0.0;
    special_overflow(k);
  }
  check_power(-k * log_scale_, k);
  return expi2pi(reduced_phase(k));
}

cplx Frequency::q_pow_minus_one(int k) const {
  if (k == 0) return 0.0;
  if (is_zero()) {
    if (k > 0) return -1.0;
    special_overflow(k);
  }
  if (is_infinity()) {
    if (k < 0) return -1.0;
    special_overflow(k);
  }
  check_power(-k * log_scale_, k);
  // e^{2 pi i t} - 1 = 2i sin(pi t) e^{i pi t}
  const cplx t = reduced_phase(k);
  return 2.0 * kI * std::sin(kPi * t) * std::exp(kPi * kI * t);
}

cplx Frequency::second_difference(int k) const {
  if (k == 0) return 0.0;
  if (is_special()) special_overflow(k);
  check_power(std::abs(k * log_scale_), k);
  const cplx s = std::sin(kPi * reduced_phase(k));
  return -4.0 * s * s;
}

Frequency Frequency::reflected() const {
  if (is_zero()) return infinity();
  if (is_infinity()) return zero();
  return from_omega(std::conj(omega_));
}

cplx lambda_k(const Frequency& f, int k) {
  if (k == 0) throw InvalidArgument("lambda_k: k must be nonzero");
  if (f.is_zero()) return k > 0 ? cplx{-1.0} : cplx{};
  if (f.is_infinity()) return k < 0 ? cplx{-1.0} : cplx{};
  const auto resonance = [k](cplx d) {
    if (std::abs(d) < kResonanceFloor) {
      std::ostringstream msg;
      msg << "resonance: |q^" << k << " - 1| = " << std::abs(d);
      throw Resonance(msg.str(), k);
    }
  };
  if (-k * f.log_scale() <= 0.0) {
    const cplx d = f.q_pow_minus_one(k);
    resonance(d);
    return 1.0 / d;
  }
  // |q^k| > 1: lambda_k = -1 - lambda_{-k} = z / (1 - z) with z = q^{-k}.
  const cplx d = f.q_pow_minus_one(-k);
  resonance(d);
  return -f.q_pow(-k) / d;
}

// ---------------------------------------------------------- Diophantine sets

DiophantineClass::DiophantineClass(double M, double tau, int m_max)
    : M_(M), tau_(tau), m_max_(m_max) {
  if (!(tau > 0.0)) throw InvalidArgument("DiophantineClass: tau must be > 0");
  if (m_max < 2) throw InvalidArgument("DiophantineClass: m_max must be >= 2");
  const double bound = 2.0 * std::riemann_zeta(1.0 + tau);
  if (!(M > bound)) {
    std::ostringstream msg;
    msg << "DiophantineClass: M = " << M << " must exceed 2 zeta(1+tau) = "
        << bound;
    throw InvalidArgument(msg.str());
  }
}

double DiophantineClass::radius(std::int64_t m) const {
  return 1.0 / (M_ * std::pow(static_cast<double>(m), 2.0 + tau_));
}

double DiophantineClass::gap_measure_bound() const {
  return 2.0 * std::riemann_zeta(1.0 + tau_) / M_;
}

namespace {

struct Fraction {
  std::int64_t p;
  std::int64_t q;
};

// Convergents p/q of x with q <= q_max, from the exact binary expansion of x.
std::vector<Fraction> convergents(double x, std::int64_t q_max) {
  const double a0 = std::floor(x);
  const double y = x - a0;
  std::vector<Fraction> out;
  const auto ia0 = static_cast<std::int64_t>(a0);
  out.push_back({ia0, 1});
  if (y == 0.0) return out;
  int e = 0;
  const double mant = std::frexp(y, &e);
  const int shift = 53 - e;
  // Below 2^-70 the next denominator exceeds any admissible q_max.
  if (shift > 120) return out;
  using i128 = __int128;
  i128 num = static_cast<i128>(std::ldexp(mant, 53));
  i128 den = static_cast<i128>(1) << shift;
  i128 p0 = 1, q0 = 0, p1 = ia0, q1 = 1;
  while (num != 0) {
    const i128 a = den / num;
    const i128 r = den - a * num;
    den = num;
    num = r;
    const i128 p2 = a * p1 + p0;
    const i128 q2 = a * q1 + q0;
    if (q2 > q_max) break;
    out.push_back({static_cast<std::int64_t>(p2), static_cast<std::int64_t>(q2)});
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
  }
  return out;
}

// |x - p/q| computed against the fractional part to keep the cancellation exact.
double abs_diff(double x, const Fraction& f) {
  const double a0 = std::floor(x);
  const double y = x - a0;
  const double p = static_cast<double>(f.p - static_cast<std::int64_t>(a0) * f.q);
  return std::abs(std::fma(y, static_cast<double>(f.q), -p)) /
         static_cast<double>(f.q);
}

struct Gap {
  double lo;
  double hi;
};

// Gaps (open) containing x; by Legendre's theorem they sit at convergents.
std::vector<Gap> gaps_containing(double x, const DiophantineClass& cls) {
  std::vector<Gap> out;
  for (const auto& f : convergents(x, cls.m_max())) {
    const double r = cls.radius(f.q);
    if (abs_diff(x, f) < r) {
      const double c = static_cast<double>(f.p) / static_cast<double>(f.q);
      out.push_back({c - r, c + r});
    }
  }
  return out;
}

std::vector<Gap> merge_sorted(std::vector<Gap> gaps) {
  std::sort(gaps.begin(), gaps.end(),
            [](const Gap& a, const Gap& b) { return a.lo < b.lo; });
  std::vector<Gap> out;
  for (const auto& g : gaps) {
    if (!out.empty() && g.lo < out.back().hi)
      out.back().hi = std::max(out.back().hi, g.hi);
    else
      out.push_back(g);
  }
  return out;
}

// All reduced n/m in [0, 1] with m <= m_hi, gaps clipped to [0, 1], merged.
std::vector<Gap> explicit_gaps(const DiophantineClass& cls, int m_hi) {
  std::vector<Gap> gaps;
  for (std::int64_t m = 1; m <= m_hi; ++m) {
    const double r = cls.radius(m);
    for (std::int64_t n = 0; n <= m; ++n) {
      if (std::gcd(n, m) != 1) continue;
      const double c = static_cast<double>(n) / static_cast<double>(m);
      gaps.push_back({std::max(0.0, c - r), std::min(1.0, c + r)});
    }
  }
  return merge_sorted(std::move(gaps));
}

}  // namespace

MarginReport dioph_real_margin(double x, const DiophantineClass& cls) {
  MarginReport rep;
  rep.truncated_at = cls.m_max();
  rep.margin = std::numeric_limits<double>::infinity();
  for (const auto& f : convergents(x, cls.m_max())) {
    const double margin = abs_diff(x, f) * static_cast<double>(f.q) * cls.M() *
                          std::pow(static_cast<double>(f.q), 1.0 + cls.tau());
    if (margin < rep.margin) {
      rep.margin = margin;
      rep.n = f.p;
      rep.m = f.q;
    }
  }
  rep.member = rep.margin >= 1.0;
  return rep;
}

double dist_to_AMR(double x, const DiophantineClass& cls) {
  const auto initial = gaps_containing(x, cls);
  if (initial.empty()) return 0.0;
  double lo = initial.front().lo;
  double hi = initial.front().hi;
  for (const auto& g : initial) {
    lo = std::min(lo, g.lo);
    hi = std::max(hi, g.hi);
  }
  // Walk each end of the connected component until it leaves every gap.
  constexpr int kMaxSteps = 1 << 20;
  for (int step = 0; step < kMaxSteps; ++step) {
    const auto gs = gaps_containing(lo, cls);
    if (gs.empty()) break;
    double next = lo;
    for (const auto& g : gs) next = std::min(next, g.lo);
    if (!(next < lo)) break;
    lo = next;
  }
  for (int step = 0; step < kMaxSteps; ++step) {
    const auto gs = gaps_containing(hi, cls);
    if (gs.empty()) break;
    double next = hi;
    for (const auto& g : gs) next = std::max(next, g.hi);
    if (!(next > hi)) break;
    hi = next;
  }
  return std::min(x - lo, hi - x);
}

bool in_AMC(cplx omega, const DiophantineClass& cls) {
  return dist_to_AMR(omega.real(), cls) <= std::abs(omega.imag());
}

bool in_KM(const Frequency& f, const DiophantineClass& cls) {
  if (f.is_special()) return true;
  return in_AMC(f.omega(), cls);
}

SmallDivisorReport check_small_divisor_bound(const Frequency& f,
                                             const DiophantineClass& cls,
                                             int k_max) {
  SmallDivisorReport rep;
  rep.k_max = k_max;
  for (int a = 1; a <= k_max; ++a) {
    const double bound =
        std::sqrt(2.0) * cls.M() * std::pow(static_cast<double>(a), 1.0 + cls.tau());
    for (int k : {a, -a}) {
      double ratio = 0.0;
      try {
        ratio = std::abs(lambda_k(f, k)) / bound;
      } catch (const Resonance&) {
        ratio = std::numeric_limits<double>::infinity();
      }
      if (ratio > rep.max_ratio) {
        rep.max_ratio = ratio;
        rep.worst_k = k;
      }
    }
  }
  if (rep.max_ratio > 1.0) {
    std::ostringstream msg;
    msg << "small-divisor bound violated at k = " << rep.worst_k
        << ": |lambda_k| / (sqrt2 M |k|^{1+tau}) = " << rep.max_ratio;
    throw BoundViolation(msg.str());
  }
  return rep;
}

bool check_exp_dist_bound(cplx z) {
  if (std::abs(z.imag()) > 0.5)
    throw InvalidArgument("check_exp_dist_bound: requires |Im z| <= 1/2");
  const cplx t{z.real() - std::nearbyint(z.real()), z.imag()};
  // |e^{2 pi i t} - 1| = 2 |sin(pi t)| e^{-pi Im t}
  const double lhs = 2.0 * std::abs(std::sin(kPi * t)) * std::exp(-kPi * t.imag());
  const double rhs = std::abs(t);
  if (lhs < rhs) {
    std::ostringstream msg;
    msg << "|e^{2 pi i z} - 1| = " << lhs << " < dist(z, Z) = " << rhs;
    throw BoundViolation(msg.str());
  }
  return true;
}

double total_gap_measure(const DiophantineClass& cls) {
  const int m_max = cls.m_max();
  const int m_big = std::min(m_max, 300);
  const auto big = explicit_gaps(cls, m_big);
  long double measure = 0.0L;
  for (const auto& g : big) measure += static_cast<long double>(g.hi) - g.lo;
  if (m_big == m_max) return static_cast<double>(std::min(measure, 1.0L));

  // Remaining denominators are streamed in Farey order. Their radii are below
  // r_window, so left endpoints are sorted once the stream has moved r_window
  // past them; a small heap restores the order.
  const double r_window = cls.radius(m_big + 1);
  std::priority_queue<std::pair<double, double>,
                      std::vector<std::pair<double, double>>, std::greater<>>
      pending;
  std::size_t bi = 0;
  bool open = false;
  Gap cur{0.0, 0.0};

  // Adds measure(cur \ big).
  const auto flush = [&](const Gap& s) {
    long double len = static_cast<long double>(s.hi) - s.lo;
    while (bi < big.size() && big[bi].hi <= s.lo) ++bi;
    for (std::size_t j = bi; j < big.size() && big[j].lo < s.hi; ++j) {
      const double lo = std::max(s.lo, big[j].lo);
      const double hi = std::min(s.hi, big[j].hi);
      if (hi > lo) len -= static_cast<long double>(hi) - lo;
    }
    measure += len;
  };
  const auto emit = [&](double lo, double hi) {
    if (open && lo < cur.hi) {
      cur.hi = std::max(cur.hi, hi);
      return;
    }
    if (open) flush(cur);
    cur = {lo, hi};
    open = true;
  };

  const std::int64_t n = m_max;
  std::int64_t a = 0, b = 1, c = 1, d = n;
  while (c <= n) {
    const std::int64_t k = (n + b) / d;
    const std::int64_t e = k * c - a;
    const std::int64_t f = k * d - b;
    a = c;
    b = d;
    c = e;
    d = f;
    // a/b is the current term.
    if (b <= m_big) continue;
    const double center = static_cast<double>(a) / static_cast<double>(b);
    const double r = cls.radius(b);
    while (!pending.empty() && pending.top().first <= center - r_window) {
      emit(pending.top().first, pending.top().second);
      pending.pop();
    }
    pending.emplace(std::max(0.0, center - r), std::min(1.0, center + r));
  }
  while (!pending.empty()) {
    emit(pending.top().first, pending.top().second);
    pending.pop();
  }
  if (open) flush(cur);
  return static_cast<double>(std::clamp(measure, 0.0L, 1.0L));
}

SetGeometry export_set_geometry(const DiophantineClass& cls,
                                const GeometryOptions& options) {
  SetGeometry geo;
  geo.M = cls.M();
  geo.tau = cls.tau();
  geo.m_max = cls.m_max();
  geo.list_m_max = std::min(options.list_m_max, cls.m_max());
  for (const auto& g : explicit_gaps(cls, geo.list_m_max))
    geo.gaps.emplace_back(g.lo, g.hi);
  geo.total_gap_measure = total_gap_measure(cls);
  geo.measure_bound = cls.gap_measure_bound();

  const int n = std::max(options.boundary_points, 2);
  std::vector<double> dist(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    dist[i] = dist_to_AMR(static_cast<double>(i) / n, cls);
  for (int sign : {1, -1}) {
    for (int i = 0; i < n; ++i) {
      const cplx omega{static_cast<double>(i) / n, sign * dist[i]};
      geo.boundary_omega.push_back(omega);
      geo.boundary_q.push_back(expi2pi(omega));
    }
  }
  return geo;
}

std::vector<Frequency> sample_KM(const DiophantineClass& cls, std::size_t count,
                                 std::mt19937_64& rng, double max_extra,
                                 int sign) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<Frequency> out;
  out.reserve(count);
  while (out.size() < count) {
    const double x = unit(rng);
    const double extra = max_extra * unit(rng);
    int s = sign;
    if (s == 0) s = unit(rng) < 0.5 ? 1 : -1;
    const double im = s * (dist_to_AMR(x, cls) + extra);
    out.push_back(Frequency::from_omega({x, im}));
  }
  return out;
}

// ------------------------------------------------------ C^1-holomorphic norm

namespace {

double l1(const std::vector<cplx>& v) {
  double s = 0.0;
  for (const auto& c : v) s += std::abs(c);
  return s;
}

}  // namespace

NormEstimate c1hol_norm_estimate(const SampledFamily& family) {
  const std::size_t P = family.points.size();
  if (P < 2) throw InvalidArgument("c1hol_norm_estimate: needs >= 2 points");
  if (family.values.size() != P || family.derivs.size() != P)
    throw InvalidArgument("c1hol_norm_estimate: values/derivs size mismatch");

  NormEstimate est;
  for (const auto& v : family.values) est.n0 = std::max(est.n0, l1(v));

  for (Chart chart : {Chart::kInner, Chart::kOuter}) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < P; ++i)
      if (family.points[i].chart() == chart) idx.push_back(i);
    if (idx.empty()) continue;

    // Derivative with respect to the chart coordinate.
    std::vector<std::vector<cplx>> psi;
    std::vector<cplx> coord;
    for (std::size_t i : idx) {
      const auto& pt = family.points[i];
      coord.push_back(pt.coordinate());
      std::vector<cplx> d = family.derivs[i];
      if (chart == Chart::kOuter && !pt.is_infinity()) {
        const cplx q = pt.q();
        for (auto& c : d) c *= -q * q;
      }
      est.n1 = std::max(est.n1, l1(d));
      psi.push_back(std::move(d));
    }

    const std::size_t n = idx.size();
    std::vector<cplx> tmp;
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) {
        if (a == b) continue;
        const auto& va = family.values[idx[a]];
        const auto& vb = family.values[idx[b]];
        const cplx dq = coord[b] - coord[a];
        double delta = 0.0;
        double omega = 0.0;
        for (std::size_t j = 0; j < va.size(); ++j) {
          const cplx diff = vb[j] - va[j];
          delta += std::abs(diff);
          if (dq != cplx{}) omega += std::abs(diff / dq - psi[a][j]);
        }
        est.n1 = std::max(est.n1, delta);
        est.n2 = std::max(est.n2, omega);
      }
    }
  }
  return est;
}

}  // namespace kamforge
