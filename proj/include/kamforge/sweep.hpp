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

// Independent Newton solves over a grid of complex rotation numbers (and
// optionally several eps), run on a worker pool and gathered by grid index.

#include <optional>
#include <string>
#include <vector>

#include "kamforge/frequency.hpp"
#include "kamforge/kam.hpp"

namespace kamforge {

struct SweepConfig {
  double re_lo = 0.55;
  double re_hi = 0.65;
  int re_n = 11;
  double im_lo = 0.0;
  double im_hi = 0.1;
  int im_n = 11;
  std::vector<cplx> eps_values{0.05};
  FourierSeries f = FourierSeries::cosine(1);
  SolverConfig solver;
  int workers = 1;

  void validate() const;
};

struct SweepPoint {
  int index = 0;
  cplx omega{};
  cplx eps{};
  bool converged = false;
  std::optional<InvariantCurve> curve;
  double dynamical_residual = 0.0;
  std::string error_kind;
  std::string error_message;
  std::vector<double> error_history;
};

struct SweepResult {
  std::vector<SweepPoint> points;  // grid order: eps, then Im, then Re
  int converged_count = 0;
  // Converged points at the first eps with Re-neighbour finite differences.
  SampledFamily family;
};

// KAMFORGE_WORKERS, when set to a positive integer, replaces `requested`.
int resolve_workers(int requested);

SweepResult run_sweep(const SweepConfig& config);

// One JSON object per line, in grid order.
std::string sweep_jsonl(const SweepResult& result);

}  // namespace kamforge
