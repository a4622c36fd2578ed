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

// Data-parallel inner loops. Each kernel has a serial reference version and an
// OpenMP version with identical per-element arithmetic, so the two agree
// bit-for-bit regardless of thread count. The unqualified entry points pick the
// OpenMP version once the work is large enough to amortize a parallel region.

#include <cstddef>
#include <span>

#include "kamforge/numeric.hpp"

namespace kamforge::kernels {

// Below this many inner-loop operations the dispatchers stay serial.
inline constexpr std::size_t kParallelWorkThreshold = std::size_t{1} << 15;

namespace serial {

// Linear convolution, out.size() == a.size() + b.size() - 1.
void convolve(std::span<const cplx> a, std::span<const cplx> b,
              std::span<cplx> out);

// out[j] = sum_{k=-n}^{n} coeffs[k+n] e^{2 pi i k z_j}, coeffs.size() == 2n+1.
// Horner in w = e^{2 pi i z}; the caller is responsible for the exponent cap.
void eval_trig(std::span<const cplx> coeffs, std::span<const cplx> points,
               std::span<cplx> out);

// inout[i] *= factors[i].
void multiply(std::span<const cplx> factors, std::span<cplx> inout);

}  // namespace serial

namespace omp {

void convolve(std::span<const cplx> a, std::span<const cplx> b,
              std::span<cplx> out);
void eval_trig(std::span<const cplx> coeffs, std::span<const cplx> points,
               std::span<cplx> out);
void multiply(std::span<const cplx> factors, std::span<cplx> inout);

}  // namespace omp

void convolve(std::span<const cplx> a, std::span<const cplx> b,
              std::span<cplx> out);
void eval_trig(std::span<const cplx> coeffs, std::span<const cplx> points,
               std::span<cplx> out);
void multiply(std::span<const cplx> factors, std::span<cplx> inout);

}  // namespace kamforge::kernels
