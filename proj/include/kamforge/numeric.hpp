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

#include <cmath>
#include <complex>
#include <numbers>

namespace kamforge {

using cplx = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;
inline constexpr cplx kI{0.0, 1.0};

// Numerical policy shared by all modules.
inline constexpr int kDefaultCutoff = 256;
inline constexpr int kHardCutoffCap = 4096;
inline constexpr double kExponentCap = 700.0;
inline constexpr double kResonanceFloor = 1e-300;
inline constexpr double kInvertFloor = 1e-8;

// e^{2 pi i k z} without going through pow(); callers check the cap.
inline cplx expi2pi(cplx z) { return std::exp(kTwoPi * kI * z); }

// Distance from a complex number to the integer lattice.
inline double dist_to_integers(cplx z) {
  return std::abs(z - std::round(z.real()));
}

inline double dist_to_integers(double x) {
  return std::abs(x - std::round(x));
}

}  // namespace kamforge
