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

#include <cstddef>
#include <span>

#include "kamforge/numeric.hpp"

namespace kamforge::fft {

// Unnormalized DFTs backed by FFTW. Plans are cached per length and shared
// across threads; execution is reentrant.
//   forward:  out[k] = sum_j in[j] e^{-2 pi i jk/n}
//   backward: out[j] = sum_k in[k] e^{+2 pi i jk/n}
void forward(std::span<const cplx> in, std::span<cplx> out);
void backward(std::span<const cplx> in, std::span<cplx> out);

// Smallest power of two >= n (and >= 1).
std::size_t next_pow2(std::size_t n);

}  // namespace kamforge::fft
