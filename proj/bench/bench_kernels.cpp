// Copyright 2026 The clqaoa Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Serial reference kernels against their OpenMP counterparts.
//
//   bench_kernels --benchmark_filter=mixer

#include <benchmark/benchmark.h>

#include <cmath>

#include "clq/io.hpp"
#include "clq/kernels.hpp"
#include "clq/qubo.hpp"

using namespace clq;
using kernels::Amplitude;
using kernels::Exec;

namespace {

TspProblem problem_of(int n) {
  Rng rng(static_cast<std::uint64_t>(n));
  return TspProblem(gen_synthetic(n, rng));
}

std::vector<Amplitude> uniform_state(std::size_t dim) {
  return std::vector<Amplitude>(dim, Amplitude(1.0 / std::sqrt(static_cast<double>(dim)), 0));
}

Exec exec_of(const benchmark::State& s) { return s.range(1) ? Exec::parallel : Exec::serial; }

void label(benchmark::State& s) { s.SetLabel(s.range(1) ? "omp" : "serial"); }

void BM_cost_table(benchmark::State& s) {
  const TspProblem p = problem_of(static_cast<int>(s.range(0)));
  for (auto _ : s) benchmark::DoNotOptimize(kernels::subspace_cost_table(p, exec_of(s)));
  label(s);
}

void BM_phase(benchmark::State& s) {
  const TspProblem p = problem_of(static_cast<int>(s.range(0)));
  const auto costs = kernels::subspace_cost_table(p, Exec::serial);
  auto amps = uniform_state(costs.size());
  for (auto _ : s) {
    kernels::apply_phase(amps, costs, 0.37, exec_of(s));
    benchmark::ClobberMemory();
  }
  s.SetItemsProcessed(s.iterations() * static_cast<std::int64_t>(amps.size()));
  label(s);
}

void BM_mixer(benchmark::State& s) {
  const int n = static_cast<int>(s.range(0));
  std::size_t dim = 1;
  for (int t = 0; t < n; ++t) dim *= static_cast<std::size_t>(n);
  auto amps = uniform_state(dim);
  for (auto _ : s) {
    kernels::apply_grover_mixer(amps, n, 0.81, exec_of(s));
    benchmark::ClobberMemory();
  }
  s.SetItemsProcessed(s.iterations() * static_cast<std::int64_t>(dim));
  label(s);
}

void BM_expectation(benchmark::State& s) {
  const TspProblem p = problem_of(static_cast<int>(s.range(0)));
  const auto costs = kernels::subspace_cost_table(p, Exec::serial);
  const auto amps = uniform_state(costs.size());
  for (auto _ : s) benchmark::DoNotOptimize(kernels::expectation(amps, costs, exec_of(s)));
  s.SetItemsProcessed(s.iterations() * static_cast<std::int64_t>(amps.size()));
  label(s);
}

void BM_qubo_extremes(benchmark::State& s) {
  const QuboModel q = qubo_matrix(problem_of(static_cast<int>(s.range(0))));
  for (auto _ : s) benchmark::DoNotOptimize(kernels::qubo_extremes(q, exec_of(s)));
  label(s);
}

}  // namespace

BENCHMARK(BM_cost_table)->ArgsProduct({{5, 6, 7}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_phase)->ArgsProduct({{5, 6, 7}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_mixer)->ArgsProduct({{5, 6, 7}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_expectation)->ArgsProduct({{5, 6, 7}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_qubo_extremes)->ArgsProduct({{4}, {0, 1}})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
