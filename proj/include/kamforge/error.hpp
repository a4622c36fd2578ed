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

#include <stdexcept>
#include <string>
#include <vector>

namespace kamforge {

enum class ErrorKind {
  kInvalidArgument,
  kOverflowRisk,
  kResonance,
  kNearSingular,
  kNoConvergence,
  kDivergence,
  kBoundViolation,
};

const char* to_string(ErrorKind kind);

// Base class for every failure raised by the library. The kind is stable and
// is what the CLI reports in its machine-readable error output.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class InvalidArgument : public Error {
 public:
  explicit InvalidArgument(const std::string& what)
      : Error(ErrorKind::kInvalidArgument, what) {}
};

// A complex exponential would exceed the configured exponent cap.
class OverflowRisk : public Error {
 public:
  explicit OverflowRisk(const std::string& what)
      : Error(ErrorKind::kOverflowRisk, what) {}
};

// |q^k - 1| (or the analogous rational-frequency divisor) vanished.
class Resonance : public Error {
 public:
  Resonance(const std::string& what, int mode)
      : Error(ErrorKind::kResonance, what), mode_(mode) {}
  int mode() const noexcept { return mode_; }

 private:
  int mode_;
};

class NearSingular : public Error {
 public:
  explicit NearSingular(const std::string& what)
      : Error(ErrorKind::kNearSingular, what) {}
};

// Iterative solvers carry their residual history out with the failure.
class NoConvergence : public Error {
 public:
  NoConvergence(const std::string& what, std::vector<double> history,
                ErrorKind kind = ErrorKind::kNoConvergence)
      : Error(kind, what), history_(std::move(history)) {}
  const std::vector<double>& history() const noexcept { return history_; }

 private:
  std::vector<double> history_;
};

class BoundViolation : public Error {
 public:
  explicit BoundViolation(const std::string& what)
      : Error(ErrorKind::kBoundViolation, what) {}
};

}  // namespace kamforge
