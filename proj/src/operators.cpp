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

#include "kamforge/operators.hpp"

#include <sstream>

#include "kamforge/error.hpp"

namespace kamforge {

const char* to_string(MultiplierKind kind) {
  switch (kind) {
    case MultiplierKind::kShiftPlus: return "shift_plus";
    case MultiplierKind::kShiftMinus: return "shift_minus";
    case MultiplierKind::kNabla: return "nabla";
    case MultiplierKind::kNablaMinus: return "nabla_minus";
    case MultiplierKind::kDelta: return "delta";
    case MultiplierKind::kGamma: return "gamma";
    case MultiplierKind::kGammaMinus: return "gamma_minus";
    case MultiplierKind::kEq: return "e_q";
  }
  return "unknown";
}

OperatorSet::OperatorSet(const Frequency& freq, int cutoff)
    : freq_(freq), cutoff_(cutoff) {
  if (cutoff < 0) throw InvalidArgument("OperatorSet: negative cutoff");
  const std::size_t size = static_cast<std::size_t>(2 * cutoff + 1);
  for (auto& t : tables_) {
    t.value.assign(size, cplx{});
    t.flag.assign(size, kOk);
  }
  auto set = [&](MultiplierKind kind, int k, auto&& compute) {
    auto& t = tables_[static_cast<std::size_t>(kind)];
    const auto i = static_cast<std::size_t>(k + cutoff);
    try {
      t.value[i] = compute();
    } catch (const Resonance&) {
      t.flag[i] = kResonant;
    } catch (const OverflowRisk&) {
      t.flag[i] = kOverflow;
    }
  };

  for (int k = -cutoff; k <= cutoff; ++k) {
    set(MultiplierKind::kShiftPlus, k, [&] { return freq.q_pow(k); });
    set(MultiplierKind::kShiftMinus, k, [&] { return freq.q_pow(-k); });
    set(MultiplierKind::kNabla, k, [&] { return freq.q_pow_minus_one(k); });
    set(MultiplierKind::kNablaMinus, k,
        [&] { return -freq.q_pow_minus_one(-k); });
    set(MultiplierKind::kDelta, k, [&] { return freq.second_difference(k); });
    if (k == 0) continue;  // inverses vanish on the mean
    set(MultiplierKind::kGamma, k, [&] { return lambda_k(freq, k); });
    set(MultiplierKind::kGammaMinus, k, [&] { return -lambda_k(freq, -k); });
    // 1/(q^k - 2 + q^{-k}) = -lambda_k lambda_{-k}, bounded in both charts.
    set(MultiplierKind::kEq, k,
        [&] { return -lambda_k(freq, k) * lambda_k(freq, -k); });
  }
  const auto& g = tables_[static_cast<std::size_t>(MultiplierKind::kGamma)];
  for (std::size_t i = 0; i < size; ++i)
    if (g.flag[i] == kOk)
      max_abs_lambda_ = std::max(max_abs_lambda_, std::abs(g.value[i]));
}

void OperatorSet::fail(MultiplierKind kind, int k) const {
  const auto& t = tables_[static_cast<std::size_t>(kind)];
  std::ostringstream msg;
  msg << to_string(kind) << " multiplier at mode " << k;
  if (t.flag[static_cast<std::size_t>(k + cutoff_)] == kResonant) {
    msg << " is resonant";
    throw Resonance(msg.str(), k);
  }
  msg << " exceeds the exponent cap";
  throw OverflowRisk(msg.str());
}

cplx OperatorSet::multiplier(MultiplierKind kind, int k) const {
  if (k < -cutoff_ || k > cutoff_)
    throw InvalidArgument("OperatorSet::multiplier: mode beyond table cutoff");
  const auto& t = tables_[static_cast<std::size_t>(kind)];
  const auto i = static_cast<std::size_t>(k + cutoff_);
  if (t.flag[i] != kOk) fail(kind, k);
  return t.value[i];
}

FourierSeries OperatorSet::apply(MultiplierKind kind,
                                 const FourierSeries& phi) const {
  if (phi.cutoff() > cutoff_)
    throw InvalidArgument("OperatorSet::apply: series cutoff beyond table");
  const auto& t = tables_[static_cast<std::size_t>(kind)];
  FourierSeries out(phi.cutoff());
  for (int k = -phi.cutoff(); k <= phi.cutoff(); ++k) {
    const cplx c = phi[k];
    if (c == cplx{}) continue;
    const auto i = static_cast<std::size_t>(k + cutoff_);
    if (t.flag[i] != kOk) fail(kind, k);
    out.at(k) = t.value[i] * c;
  }
  return out;
}

FourierSeries apply(MultiplierKind kind, const FourierSeries& phi,
                    const Frequency& freq) {
  return OperatorSet(freq, phi.cutoff()).apply(kind, phi);
}

FourierSeries e_n(const FourierSeries& phi, int n) {
  if (n < 1) throw InvalidArgument("e_n: n must be positive");
  FourierSeries out(phi.cutoff());
  for (int m = 1; m <= std::min(n, phi.cutoff()); ++m) {
    if (n % m != 0) continue;
    const double d = n / m;
    out.at(m) = d * phi[m];
    out.at(-m) = d * phi[-m];
  }
  return out;
}

}  // namespace kamforge
