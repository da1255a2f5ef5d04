// Copyright 2026 The xorcomm Authors
//
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

// Parallel kernels against the serial reference implementations.

#include <benchmark/benchmark.h>
#include <omp.h>

#include <random>

#include "xorcomm/bell_lift.hpp"
#include "xorcomm/family.hpp"
#include "xorcomm/reference.hpp"
#include "xorcomm/solvers.hpp"

namespace {

using namespace xorcomm;

XorGame random_game(std::size_t x, std::size_t y, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  RealMatrix raw(x, y);
  for (double& e : raw.mutable_data()) e = normal(rng);
  return normalize_coefficients(raw).game;
}

void set_threads(const benchmark::State& state) { omp_set_num_threads(static_cast<int>(state.range(1))); }

void BM_ClassicalParallel(benchmark::State& state) {
  set_threads(state);
  const XorGame g = random_game(static_cast<std::size_t>(state.range(0)), 16, 1);
  for (auto _ : state) benchmark::DoNotOptimize(classical_value_exact(g).value);
}

void BM_ClassicalReference(benchmark::State& state) {
  const XorGame g = random_game(static_cast<std::size_t>(state.range(0)), 16, 1);
  for (auto _ : state) benchmark::DoNotOptimize(reference::classical_value(g.coefficients()));
}

void BM_OwClassicalParallel(benchmark::State& state) {
  set_threads(state);
  const XorGame g = random_game(static_cast<std::size_t>(state.range(0)), 8, 2);
  for (auto _ : state) benchmark::DoNotOptimize(ow_classical_value_exact(g, 2).value);
}

void BM_OwClassicalReference(benchmark::State& state) {
  const XorGame g = random_game(static_cast<std::size_t>(state.range(0)), 8, 2);
  for (auto _ : state) benchmark::DoNotOptimize(reference::ow_classical_value(g.coefficients(), 2));
}

void BM_BellClassicalParallel(benchmark::State& state) {
  set_threads(state);
  const BellFunctional b = build_lifted_functional(random_game(static_cast<std::size_t>(state.range(0)), 3, 3), 4);
  for (auto _ : state) benchmark::DoNotOptimize(bell_classical_value_exact(b).value);
}

void BM_BellClassicalReference(benchmark::State& state) {
  const BellFunctional b = build_lifted_functional(random_game(static_cast<std::size_t>(state.range(0)), 3, 3), 4);
  for (auto _ : state) benchmark::DoNotOptimize(reference::bell_classical_value(b));
}

void BM_ComputeMParallel(benchmark::State& state) {
  set_threads(state);
  for (auto _ : state) benchmark::DoNotOptimize(compute_M(static_cast<int>(state.range(0))));
}

void BM_ComputeMReference(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(reference::compute_M(static_cast<int>(state.range(0))));
}

void thread_args(benchmark::internal::Benchmark* b, std::initializer_list<std::int64_t> sizes) {
  const int max_threads = omp_get_max_threads();
  for (std::int64_t s : sizes)
    for (int t = 1; t <= max_threads; t *= 2) b->Args({s, t});
}

}  // namespace

BENCHMARK(BM_ClassicalParallel)->Apply([](auto* b) { thread_args(b, {12, 16}); })->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ClassicalReference)->Arg(12)->Arg(16)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_OwClassicalParallel)->Apply([](auto* b) { thread_args(b, {6, 8}); })->Unit(benchmark::kMillisecond);
BENCHMARK(BM_OwClassicalReference)->Arg(6)->Arg(8)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BellClassicalParallel)->Apply([](auto* b) { thread_args(b, {2, 3}); })->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BellClassicalReference)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ComputeMParallel)->Apply([](auto* b) { thread_args(b, {2, 3}); })->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ComputeMReference)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
