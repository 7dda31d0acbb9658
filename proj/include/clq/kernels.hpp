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

#pragma once

// Data-parallel inner loops of the simulator and the oracles.
//
// Every kernel has a plain serial implementation (kept as the reference the
// tests compare against) and an OpenMP implementation. The OpenMP versions
// produce results that do not depend on the thread count: reductions go
// through fixed-size blocks summed in index order.

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

namespace clq {
class TspProblem;
struct QuboModel;
}  // namespace clq

namespace clq::kernels {

using Amplitude = std::complex<double>;

enum class Exec { serial, parallel };

/// Block length for deterministic reductions.
inline constexpr std::size_t kReduceBlock = 4096;

struct TableExtremes {
  double min = 0, max = 0;
  std::uint64_t argmin = 0, argmax = 0;  // smallest index on ties
};

struct MaskExtremes {
  std::uint64_t argmin = 0, argmax = 0;
};

namespace serial {
std::vector<double> subspace_cost_table(const TspProblem& problem);
void apply_phase(std::span<Amplitude> amps, std::span<const double> costs, double gamma);
void apply_grover_mixer(std::span<Amplitude> amps, int n, double beta);
double expectation(std::span<const Amplitude> amps, std::span<const double> costs);
double norm_squared(std::span<const Amplitude> amps);
TableExtremes table_extremes(std::span<const double> values);
/// Exhaustive scan of all 2^num_vars bit vectors, evaluating each from scratch.
MaskExtremes qubo_extremes(const QuboModel& qubo);
}  // namespace serial

namespace omp {
std::vector<double> subspace_cost_table(const TspProblem& problem);
void apply_phase(std::span<Amplitude> amps, std::span<const double> costs, double gamma);
void apply_grover_mixer(std::span<Amplitude> amps, int n, double beta);
double expectation(std::span<const Amplitude> amps, std::span<const double> costs);
double norm_squared(std::span<const Amplitude> amps);
TableExtremes table_extremes(std::span<const double> values);
/// Gray-code walk with incremental energy updates, sharded on the high bits.
MaskExtremes qubo_extremes(const QuboModel& qubo);
}  // namespace omp

std::vector<double> subspace_cost_table(const TspProblem& problem, Exec exec);
void apply_phase(std::span<Amplitude> amps, std::span<const double> costs, double gamma, Exec exec);
void apply_grover_mixer(std::span<Amplitude> amps, int n, double beta, Exec exec);
double expectation(std::span<const Amplitude> amps, std::span<const double> costs, Exec exec);
double norm_squared(std::span<const Amplitude> amps, Exec exec);
TableExtremes table_extremes(std::span<const double> values, Exec exec);
MaskExtremes qubo_extremes(const QuboModel& qubo, Exec exec);

}  // namespace clq::kernels
