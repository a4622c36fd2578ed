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

// Serial reference kernels against their OpenMP counterparts, plus the two
// product paths of the Fourier layer. Run with OMP_NUM_THREADS to vary width.

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "kamforge/fourier.hpp"
#include "kamforge/kernels.hpp"

using namespace kamforge;

namespace {

std::vector<cplx> random_vec(std::size_t n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  std::vector<cplx> v(n);
  for (auto& x : v) x = {g(rng), g(rng)};
  return v;
}

template <auto Kernel>
void BM_convolve(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto a = random_vec(n, 1), b = random_vec(n, 2);
  std::vector<cplx> out(2 * n - 1);
  for (auto _ : state) {
    Kernel(a, b, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetComplexityN(state.range(0));
}

template <auto Kernel>
void BM_eval_trig(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto c = random_vec(2 * n + 1, 3);
  std::vector<cplx> pts(4 * n);
  for (std::size_t j = 0; j < pts.size(); ++j)
    pts[j] = {static_cast<double>(j) / pts.size(), 0.01};
  std::vector<cplx> out(pts.size());
  for (auto _ : state) {
    Kernel(c, pts, out);
    benchmark::DoNotOptimize(out.data());
  }
}

template <auto Kernel>
void BM_multiply(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto f = random_vec(n, 4);
  auto v = random_vec(n, 5);
  for (auto _ : state) {
    Kernel(f, v);
    benchmark::DoNotOptimize(v.data());
  }
}

void BM_product_direct(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  FourierSeries a(n, random_vec(2 * n + 1, 6)), b(n, random_vec(2 * n + 1, 7));
  for (auto _ : state) benchmark::DoNotOptimize(fourier::product_direct(a, b));
}

void BM_product_fft(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  FourierSeries a(n, random_vec(2 * n + 1, 6)), b(n, random_vec(2 * n + 1, 7));
  for (auto _ : state) benchmark::DoNotOptimize(fourier::product_fft(a, b));
}

}  // namespace

BENCHMARK(BM_convolve<kernels::serial::convolve>)->RangeMultiplier(4)->Range(64, 4096);
BENCHMARK(BM_convolve<kernels::omp::convolve>)->RangeMultiplier(4)->Range(64, 4096);
BENCHMARK(BM_eval_trig<kernels::serial::eval_trig>)->RangeMultiplier(4)->Range(16, 1024);
BENCHMARK(BM_eval_trig<kernels::omp::eval_trig>)->RangeMultiplier(4)->Range(16, 1024);
BENCHMARK(BM_multiply<kernels::serial::multiply>)->Range(1 << 12, 1 << 20);
BENCHMARK(BM_multiply<kernels::omp::multiply>)->Range(1 << 12, 1 << 20);
BENCHMARK(BM_product_direct)->RangeMultiplier(4)->Range(16, 1024);
BENCHMARK(BM_product_fft)->RangeMultiplier(4)->Range(16, 1024);

BENCHMARK_MAIN();
