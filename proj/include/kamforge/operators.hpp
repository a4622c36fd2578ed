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

// Fourier multipliers at a fixed frequency. At mode k:
//   shift_plus   q^k              shift_minus  q^{-k}
//   nabla        q^k - 1          nabla_minus  1 - q^{-k}
//   delta        q^k - 2 + q^{-k}
//   gamma        lambda_k         gamma_minus  -lambda_{-k}
//   e_q          1/(q^k - 2 + q^{-k})
// The three inverses send mode 0 to 0.

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "kamforge/fourier.hpp"
#include "kamforge/frequency.hpp"

namespace kamforge {

enum class MultiplierKind {
  kShiftPlus,
  kShiftMinus,
  kNabla,
  kNablaMinus,
  kDelta,
  kGamma,
  kGammaMinus,
  kEq,
};

inline constexpr std::size_t kMultiplierKinds = 8;

const char* to_string(MultiplierKind kind);

// Multiplier tables for modes |k| <= cutoff, computed once. Entries that would
// overflow or hit a resonance are flagged and only raise when applied to a
// nonzero coefficient.
class OperatorSet {
 public:
  OperatorSet(const Frequency& freq, int cutoff);

  const Frequency& frequency() const noexcept { return freq_; }
  int cutoff() const noexcept { return cutoff_; }

  // Throws OverflowRisk / Resonance for flagged entries.
  cplx multiplier(MultiplierKind kind, int k) const;

  // Modes beyond the table cutoff are an InvalidArgument.
  FourierSeries apply(MultiplierKind kind, const FourierSeries& phi) const;

  // max |lambda_k| over the table (diagnostic for near-resonant q).
  double max_abs_lambda() const noexcept { return max_abs_lambda_; }

 private:
  enum Flag : std::uint8_t { kOk = 0, kOverflow = 1, kResonant = 2 };
  struct Table {
    std::vector<cplx> value;
    std::vector<std::uint8_t> flag;
  };

  void fail(MultiplierKind kind, int k) const;

  Frequency freq_;
  int cutoff_;
  std::array<Table, kMultiplierKinds> tables_;
  double max_abs_lambda_ = 0.0;
};

FourierSeries apply(MultiplierKind kind, const FourierSeries& phi,
                    const Frequency& freq);

// E^{(n)}: mode k picks up the factor n/|k| when |k| divides n, else 0.
FourierSeries e_n(const FourierSeries& phi, int n);

}  // namespace kamforge
