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

#include <cstdlib>

#include "doctest.h"
#include "kamforge/error.hpp"
#include "kamforge/io.hpp"
#include "kamforge/sweep.hpp"
#include "test_support.hpp"

using namespace kamforge;

namespace {

SweepConfig small_grid(int workers) {
  SweepConfig c;
  c.re_n = 4;
  c.im_n = 3;
  c.eps_values = {0.03, 0.05};
  c.solver.cutoff = 64;
  c.workers = workers;
  return c;
}

}  // namespace

TEST_CASE("worker count override") {
  unsetenv("KAMFORGE_WORKERS");
  CHECK(resolve_workers(3) == 3);
  setenv("KAMFORGE_WORKERS", "5", 1);
  CHECK(resolve_workers(3) == 5);
  setenv("KAMFORGE_WORKERS", "zero", 1);
  CHECK(resolve_workers(3) == 3);
  unsetenv("KAMFORGE_WORKERS");
}

TEST_CASE("grid order and bookkeeping") {
  const auto r = run_sweep(small_grid(1));
  REQUIRE(r.points.size() == 24);
  int converged = 0;
  for (std::size_t i = 0; i < r.points.size(); ++i) {
    const auto& p = r.points[i];
    CHECK(p.index == static_cast<int>(i));
    CHECK(p.converged == p.curve.has_value());
    if (!p.converged) CHECK_FALSE(p.error_kind.empty());
    converged += p.converged;
  }
  CHECK(r.converged_count == converged);
  CHECK(r.points[1].omega.real() > r.points[0].omega.real());
  CHECK(r.points[4].omega.imag() > r.points[0].omega.imag());
  CHECK(r.points[12].eps == cplx{0.05});
  CHECK(r.family.points.size() == r.family.values.size());
}

TEST_CASE("sweep output does not depend on the worker count") {
  const auto ref = sweep_jsonl(run_sweep(small_grid(1)));
  const auto ref_family = io::dump(io::to_json(run_sweep(small_grid(1)).family));
  for (int w : {4, 8}) {
    const auto r = run_sweep(small_grid(w));
    CHECK(sweep_jsonl(r) == ref);
    CHECK(io::dump(io::to_json(r.family)) == ref_family);
  }
}

TEST_CASE("single-point sweep equals a direct solve") {
  SweepConfig c;
  c.re_lo = c.re_hi = kamforge::testing::kGolden;
  c.re_n = c.im_n = 1;
  c.im_lo = c.im_hi = 0.0;
  const auto r = run_sweep(c);
  REQUIRE(r.points.size() == 1);
  REQUIRE(r.points[0].converged);
  const auto direct = solve_curve(c.f, Frequency::from_omega(kamforge::testing::kGolden), 0.05);
  CHECK(r.points[0].curve->u == direct.u);
  CHECK(r.points[0].dynamical_residual == dynamical_residual(direct));
}

TEST_CASE("default grid converges on most points") {
  SweepConfig c;
  c.workers = 4;
  const auto r = run_sweep(c);
  REQUIRE(r.points.size() == 121);
  MESSAGE("converged " << r.converged_count << " of 121");
  CHECK(r.converged_count >= 73);
}

TEST_CASE("invalid grids") {
  SweepConfig c;
  c.re_n = 0;
  CHECK_THROWS_AS(run_sweep(c), InvalidArgument);
  c = {};
  c.eps_values.clear();
  CHECK_THROWS_AS(run_sweep(c), InvalidArgument);
}
