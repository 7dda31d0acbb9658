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

#include "clq/kernels.hpp"

namespace clq::kernels {

std::vector<double> subspace_cost_table(const TspProblem& problem, Exec exec) {
  return exec == Exec::serial ? serial::subspace_cost_table(problem) : omp::subspace_cost_table(problem);
}

void apply_phase(std::span<Amplitude> amps, std::span<const double> costs, double gamma, Exec exec) {
  exec == Exec::serial ? serial::apply_phase(amps, costs, gamma) : omp::apply_phase(amps, costs, gamma);
}

void apply_grover_mixer(std::span<Amplitude> amps, int n, double beta, Exec exec) {
  exec == Exec::serial ? serial::apply_grover_mixer(amps, n, beta) : omp::apply_grover_mixer(amps, n, beta);
}

double expectation(std::span<const Amplitude> amps, std::span<const double> costs, Exec exec) {
  return exec == Exec::serial ? serial::expectation(amps, costs) : omp::expectation(amps, costs);
}

double norm_squared(std::span<const Amplitude> amps, Exec exec) {
  return exec == Exec::serial ? serial::norm_squared(amps) : omp::norm_squared(amps);
}

TableExtremes table_extremes(std::span<const double> values, Exec exec) {
  return exec == Exec::serial ? serial::table_extremes(values) : omp::table_extremes(values);
}

MaskExtremes qubo_extremes(const QuboModel& qubo, Exec exec) {
  return exec == Exec::serial ? serial::qubo_extremes(qubo) : omp::qubo_extremes(qubo);
}

}  // namespace clq::kernels
