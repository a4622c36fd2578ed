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

#include "kamforge/fourier.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "kamforge/error.hpp"
#include "kamforge/fft.hpp"
#include "kamforge/kernels.hpp"

namespace kamforge {

FourierSeries::FourierSeries(int cutoff)
    : cutoff_(cutoff),
      coeffs_(static_cast<std::size_t>(2 * std::max(cutoff, 0) + 1)) {
  if (cutoff < 0) throw InvalidArgument("FourierSeries: negative cutoff");
}

FourierSeries::FourierSeries(int cutoff, std::vector<cplx> coeffs)
    : cutoff_(cutoff), coeffs_(std::move(coeffs)) {
  if (cutoff < 0 || coeffs_.size() != static_cast<std::size_t>(2 * cutoff + 1))
    throw InvalidArgument("FourierSeries: expected 2N+1 coefficients");
}

FourierSeries FourierSeries::constant(cplx c) {
  FourierSeries s(0);
  s.coeffs_[0] = c;
  return s;
}

FourierSeries FourierSeries::mode(int k, cplx c) {
  FourierSeries s(std::abs(k));
  s.at(k) = c;
  return s;
}

FourierSeries FourierSeries::cosine(int k, double amplitude) {
  FourierSeries s(std::abs(k));
  s.at(k) += 0.5 * amplitude;
  s.at(-k) += 0.5 * amplitude;
  return s;
}

FourierSeries FourierSeries::sine(int k, double amplitude) {
  // sin x = (e^{ix} - e^{-ix}) / 2i
  FourierSeries s(std::abs(k));
  s.at(k) += cplx{0.0, -0.5 * amplitude};
  s.at(-k) += cplx{0.0, 0.5 * amplitude};
  return s;
}

cplx& FourierSeries::at(int k) {
  if (k < -cutoff_ || k > cutoff_) {
    std::ostringstream msg;
    msg << "FourierSeries::at: mode " << k << " beyond cutoff " << cutoff_;
    throw InvalidArgument(msg.str());
  }
  return coeffs_[k + cutoff_];
}

FourierSeries FourierSeries::extended(int cutoff) const {
  if (cutoff < cutoff_)
    throw InvalidArgument("FourierSeries::extended: cutoff would shrink");
  FourierSeries out(cutoff);
  std::copy(coeffs_.begin(), coeffs_.end(),
            out.coeffs_.begin() + (cutoff - cutoff_));
  return out;
}

double FourierSeries::l1_norm() const noexcept {
  double s = 0.0;
  for (const auto& c : coeffs_) s += std::abs(c);
  return s;
}

double FourierSeries::max_abs_coeff() const noexcept {
  double m = 0.0;
  for (const auto& c : coeffs_) m = std::max(m, std::abs(c));
  return m;
}

int FourierSeries::degree() const noexcept {
  for (int k = cutoff_; k > 0; --k)
    if ((*this)[k] != cplx{} || (*this)[-k] != cplx{}) return k;
  return 0;
}

FourierSeries& FourierSeries::operator+=(const FourierSeries& other) {
  if (other.cutoff_ > cutoff_) *this = extended(other.cutoff_);
  const int off = cutoff_ - other.cutoff_;
  for (std::size_t i = 0; i < other.coeffs_.size(); ++i)
    coeffs_[i + off] += other.coeffs_[i];
  return *this;
}

FourierSeries& FourierSeries::operator-=(const FourierSeries& other) {
  if (other.cutoff_ > cutoff_) *this = extended(other.cutoff_);
  const int off = cutoff_ - other.cutoff_;
  for (std::size_t i = 0; i < other.coeffs_.size(); ++i)
    coeffs_[i + off] -= other.coeffs_[i];
  return *this;
}

FourierSeries& FourierSeries::operator*=(cplx s) {
  for (auto& c : coeffs_) c *= s;
  return *this;
}

namespace fourier {

namespace {

void check_exponent(double exponent, const char* where) {
  if (!(exponent <= kExponentCap)) {
    std::ostringstream msg;
    msg << where << ": exponent " << exponent << " exceeds cap " << kExponentCap;
    throw OverflowRisk(msg.str());
  }
}

}  // namespace

Truncation truncate(const FourierSeries& phi, int cutoff) {
  if (cutoff >= phi.cutoff()) return {phi.extended(cutoff), 0.0};
  FourierSeries out(cutoff);
  double tail = 0.0;
  for (int k = -phi.cutoff(); k <= phi.cutoff(); ++k) {
    if (std::abs(k) <= cutoff)
      out.at(k) = phi[k];
    else
      tail = std::max(tail, std::abs(phi[k]));
  }
  return {std::move(out), tail};
}

cplx eval(const FourierSeries& phi, cplx theta) {
  check_exponent(kTwoPi * phi.degree() * std::abs(theta.imag()), "eval");
  cplx out;
  kernels::serial::eval_trig(phi.coeffs(), std::span<const cplx>(&theta, 1),
                             std::span<cplx>(&out, 1));
  return out;
}

cplx coeff(const FourierSeries& phi, int k) { return phi[k]; }

std::vector<cplx> to_grid(const FourierSeries& phi, std::size_t n) {
  const int N = phi.cutoff();
  if (n < static_cast<std::size_t>(2 * N + 1))
    throw InvalidArgument("to_grid: grid too small for cutoff");
  std::vector<cplx> buf(n);
  const auto nn = static_cast<long>(n);
  for (int k = -N; k <= N; ++k) buf[static_cast<std::size_t>((k + nn) % nn)] = phi[k];
  fft::backward(buf, buf);
  return buf;
}

Truncation from_grid(std::span<const cplx> values, int cutoff) {
  const std::size_t n = values.size();
  if (n < static_cast<std::size_t>(2 * cutoff + 1))
    throw InvalidArgument("from_grid: grid too small for cutoff");
  std::vector<cplx> buf(n);
  fft::forward(values, buf);
  const double scale = 1.0 / static_cast<double>(n);
  FourierSeries out(cutoff);
  const auto nn = static_cast<long>(n);
  for (int k = -cutoff; k <= cutoff; ++k)
    out.at(k) = buf[static_cast<std::size_t>((k + nn) % nn)] * scale;
  double tail = 0.0;
  for (long k = cutoff + 1; k <= nn / 2; ++k) {
    tail = std::max(tail, std::abs(buf[static_cast<std::size_t>(k)]) * scale);
    if (k != nn - k)
      tail = std::max(tail, std::abs(buf[static_cast<std::size_t>(nn - k)]) * scale);
  }
  return {std::move(out), tail};
}

double sup_norm(const FourierSeries& phi) {
  const std::size_t n =
      fft::next_pow2(std::max<std::size_t>(4 * phi.cutoff() + 4, 16));
  double m = 0.0;
  for (const auto& v : to_grid(phi, n)) m = std::max(m, std::abs(v));
  return m;
}

double sup_distance(const FourierSeries& a, const FourierSeries& b) {
  return sup_norm(a - b);
}

FourierSeries product_direct(const FourierSeries& a, const FourierSeries& b) {
  FourierSeries out(a.cutoff() + b.cutoff());
  kernels::convolve(a.coeffs(), b.coeffs(), out.coeffs());
  return out;
}

FourierSeries product_fft(const FourierSeries& a, const FourierSeries& b) {
  const int cutoff = a.cutoff() + b.cutoff();
  const std::size_t n = fft::next_pow2(static_cast<std::size_t>(2 * cutoff + 1));
  auto va = to_grid(a, n);
  const auto vb = to_grid(b, n);
  kernels::multiply(vb, va);
  return from_grid(va, cutoff).series;
}

Truncation product_capped(const FourierSeries& a, const FourierSeries& b,
                          int cap) {
  const std::size_t sa = a.size();
  const std::size_t sb = b.size();
  FourierSeries full = (std::min(sa, sb) <= 16 || sa * sb <= 8192)
                           ? product_direct(a, b)
                           : product_fft(a, b);
  if (full.cutoff() <= cap) return {std::move(full), 0.0};
  return truncate(full, cap);
}

FourierSeries product(const FourierSeries& a, const FourierSeries& b) {
  return product_capped(a, b).series;
}

FourierSeries product(const FourierSeries& a, const FourierSeries& b,
                      int cutoff) {
  // Only the modes |k| <= cutoff are needed, so operands may be trimmed first.
  const auto ta = a.cutoff() > 2 * cutoff ? truncate(a, 2 * cutoff).series : a;
  const auto tb = b.cutoff() > 2 * cutoff ? truncate(b, 2 * cutoff).series : b;
  return truncate(product_capped(ta, tb).series, cutoff).series;
}

FourierSeries derivative(const FourierSeries& phi, int order) {
  if (order < 0) throw InvalidArgument("derivative: negative order");
  FourierSeries out = phi;
  if (order == 0) return out;
  for (int k = -phi.cutoff(); k <= phi.cutoff(); ++k)
    out.at(k) *= std::pow(cplx{0.0, kTwoPi * k}, order);
  return out;
}

Composition compose_id_plus(const FourierSeries& f, const FourierSeries& u,
                            const CompositionOptions& options) {
  const int joint = std::max(f.cutoff(), u.cutoff());
  const int out_cutoff = options.out_cutoff > 0 ? options.out_cutoff : joint;
  const std::size_t grid = fft::next_pow2(static_cast<std::size_t>(
      std::max({4 * joint, 4 * out_cutoff, options.min_grid})));

  if (u.degree() == 0) {
    const cplx shift = u.mean();
    check_exponent(kTwoPi * f.degree() * std::abs(shift.imag()),
                   "compose_id_plus");
    FourierSeries out = f;
    if (shift != cplx{}) {
      for (int k = -f.cutoff(); k <= f.cutoff(); ++k)
        out.at(k) *= expi2pi(static_cast<double>(k) * shift);
    }
    auto t = truncate(out, out_cutoff);
    return {std::move(t.series), {t.tail, static_cast<int>(grid)}};
  }

  auto points = to_grid(u, grid);
  double max_im = 0.0;
  for (std::size_t j = 0; j < grid; ++j) {
    points[j] += static_cast<double>(j) / static_cast<double>(grid);
    max_im = std::max(max_im, std::abs(points[j].imag()));
  }
  check_exponent(kTwoPi * f.degree() * max_im, "compose_id_plus");
  std::vector<cplx> values(grid);
  kernels::eval_trig(f.coeffs(), points, values);
  for (const auto& v : values) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
      throw OverflowRisk("compose_id_plus: non-finite value on the grid");
  }
  auto t = from_grid(values, out_cutoff);
  return {std::move(t.series), {t.tail, static_cast<int>(grid)}};
}

FourierSeries invert_pointwise(const FourierSeries& a, double floor,
                               int out_cutoff) {
  const std::size_t grid = fft::next_pow2(static_cast<std::size_t>(
      std::max({4 * a.cutoff(), 2 * out_cutoff + 2, 64})));
  auto values = to_grid(a, grid);
  double min_abs = std::abs(values[0]);
  for (const auto& v : values) min_abs = std::min(min_abs, std::abs(v));
  if (!(min_abs > floor)) {
    std::ostringstream msg;
    msg << "invert_pointwise: min |A| on grid " << min_abs << " <= floor "
        << floor;
    throw NearSingular(msg.str());
  }
  for (auto& v : values) v = 1.0 / v;
  const int cutoff =
      out_cutoff > 0 ? out_cutoff : static_cast<int>(grid / 4);
  return from_grid(values, cutoff).series;
}

double strip_norm_bound(const FourierSeries& phi, double r) {
  if (r < 0.0) throw InvalidArgument("strip_norm_bound: negative width");
  check_exponent(kTwoPi * r * phi.degree(), "strip_norm_bound");
  double s = 0.0;
  for (int k = -phi.cutoff(); k <= phi.cutoff(); ++k)
    if (phi[k] != cplx{}) s += std::abs(phi[k]) * std::exp(kTwoPi * r * std::abs(k));
  return s;
}

}  // namespace fourier
}  // namespace kamforge
