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

#include "kamforge/kernels.hpp"

#include <algorithm>
#include <cassert>

namespace kamforge::kernels {

namespace {

inline cplx convolve_at(std::span<const cplx> a, std::span<const cplx> b,
                        std::ptrdiff_t k) {
  const auto na = static_cast<std::ptrdiff_t>(a.size());
  const auto nb = static_cast<std::ptrdiff_t>(b.size());
  const std::ptrdiff_t lo = std::max<std::ptrdiff_t>(0, k - nb + 1);
  const std::ptrdiff_t hi = std::min<std::ptrdiff_t>(k, na - 1);
  cplx acc{0.0, 0.0};
  for (std::ptrdiff_t i = lo; i <= hi; ++i) acc += a[i] * b[k - i];
  return acc;
}

inline cplx eval_trig_at(std::span<const cplx> c, cplx z) {
  const auto n = static_cast<std::ptrdiff_t>(c.size() / 2);
  const cplx w = expi2pi(z);
  cplx pos = c[2 * n];
  for (std::ptrdiff_t k = n - 1; k >= 0; --k) pos = pos * w + c[n + k];
  if (n == 0) return pos;
  const cplx winv = expi2pi(-z);
  cplx neg = c[0];
  for (std::ptrdiff_t j = n - 1; j >= 1; --j) neg = neg * winv + c[n - j];
  return pos + neg * winv;
}

}  // namespace

namespace serial {

void convolve(std::span<const cplx> a, std::span<const cplx> b,
              std::span<cplx> out) {
  assert(out.size() + 1 == a.size() + b.size());
  const auto n = static_cast<std::ptrdiff_t>(out.size());
  for (std::ptrdiff_t k = 0; k < n; ++k) out[k] = convolve_at(a, b, k);
}

void eval_trig(std::span<const cplx> coeffs, std::span<const cplx> points,
               std::span<cplx> out) {
  assert(coeffs.size() % 2 == 1 && out.size() == points.size());
  for (std::size_t j = 0; j < points.size(); ++j)
    out[j] = eval_trig_at(coeffs, points[j]);
}

void multiply(std::span<const cplx> factors, std::span<cplx> inout) {
  assert(factors.size() == inout.size());
  for (std::size_t i = 0; i < inout.size(); ++i) inout[i] *= factors[i];
}

}  // namespace serial

namespace omp {

void convolve(std::span<const cplx> a, std::span<const cplx> b,
              std::span<cplx> out) {
  assert(out.size() + 1 == a.size() + b.size());
  const auto n = static_cast<std::ptrdiff_t>(out.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t k = 0; k < n; ++k) out[k] = convolve_at(a, b, k);
}

void eval_trig(std::span<const cplx> coeffs, std::span<const cplx> points,
               std::span<cplx> out) {
  assert(coeffs.size() % 2 == 1 && out.size() == points.size());
  const auto n = static_cast<std::ptrdiff_t>(points.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t j = 0; j < n; ++j)
    out[j] = eval_trig_at(coeffs, points[j]);
}

void multiply(std::span<const cplx> factors, std::span<cplx> inout) {
  assert(factors.size() == inout.size());
  const auto n = static_cast<std::ptrdiff_t>(inout.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) inout[i] *= factors[i];
}

}  // namespace omp

void convolve(std::span<const cplx> a, std::span<const cplx> b,
              std::span<cplx> out) {
  if (a.size() * b.size() >= kParallelWorkThreshold)
    omp::convolve(a, b, out);
  else
    serial::convolve(a, b, out);
}

void eval_trig(std::span<const cplx> coeffs, std::span<const cplx> points,
               std::span<cplx> out) {
  if (coeffs.size() * points.size() >= kParallelWorkThreshold)
    omp::eval_trig(coeffs, points, out);
  else
    serial::eval_trig(coeffs, points, out);
}

void multiply(std::span<const cplx> factors, std::span<cplx> inout) {
  if (inout.size() >= kParallelWorkThreshold)
    omp::multiply(factors, inout);
  else
    serial::multiply(factors, inout);
}

}  // namespace kamforge::kernels
