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

#include "kamforge/error.hpp"

namespace kamforge {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInvalidArgument: return "InvalidArgument";
    case ErrorKind::kOverflowRisk: return "OverflowRisk";
    case ErrorKind::kResonance: return "Resonance";
    case ErrorKind::kNearSingular: return "NearSingular";
    case ErrorKind::kNoConvergence: return "NoConvergence";
    case ErrorKind::kDivergence: return "Divergence";
    case ErrorKind::kBoundViolation: return "BoundViolation";
  }
  return "Unknown";
}

}  // namespace kamforge
