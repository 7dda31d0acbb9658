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

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "clq/cost_model.hpp"
#include "clq/kernels.hpp"
#include "clq/qubo.hpp"

namespace clq::kernels::serial {

std::vector<double> subspace_cost_table(const TspProblem& problem) {
  const int n = problem.n();
  const std::uint64_t size = subspace_size(n);
  std::vector<double> table(size);
  for (std::uint64_t idx = 0; idx < size; ++idx) table[idx] = tour_cost(problem, decode_sequence(idx, n));
  return table;
}

void apply_phase(std::span<Amplitude> amps, std::span<const double> costs, double gamma) {
  for (std::size_t k = 0; k < amps.size(); ++k) amps[k] *= std::polar(1.0, -gamma * costs[k]);
}

void apply_grover_mixer(std::span<Amplitude> amps, int n, double beta) {
  const Amplitude factor = 1.0 - std::polar(1.0, -beta);
  const std::size_t size = amps.size();
  const std::size_t un = static_cast<std::size_t>(n);
  for (std::size_t stride = 1; stride < size; stride *= un) {
    const std::size_t block = stride * un;
    for (std::size_t outer = 0; outer < size; outer += block) {
      for (std::size_t inner = 0; inner < stride; ++inner) {
        const std::size_t base = outer + inner;
        Amplitude mean = 0;
        for (std::size_t c = 0; c < un; ++c) mean += amps[base + c * stride];
        mean /= static_cast<double>(n);
        const Amplitude shift = factor * mean;
        for (std::size_t c = 0; c < un; ++c) amps[base + c * stride] -= shift;
      }
    }
  }
}

double expectation(std::span<const Amplitude> amps, std::span<const double> costs) {
  double e = 0;
  for (std::size_t k = 0; k < amps.size(); ++k) e += std::norm(amps[k]) * costs[k];
  return e;
}

double norm_squared(std::span<const Amplitude> amps) {
  double s = 0;
  for (const auto& a : amps) s += std::norm(a);
  return s;
}

TableExtremes table_extremes(std::span<const double> values) {
  if (values.empty()) throw std::invalid_argument("table_extremes: empty input");
  TableExtremes e{values[0], values[0], 0, 0};
  for (std::size_t k = 1; k < values.size(); ++k) {
    if (values[k] < e.min) e = {values[k], e.max, k, e.argmax};
    if (values[k] > e.max) e = {e.min, values[k], e.argmin, k};
  }
  return e;
}

MaskExtremes qubo_extremes(const QuboModel& qubo) {
  if (qubo.num_vars > 30) throw std::invalid_argument("qubo_extremes: too many variables");
  const std::uint64_t count = std::uint64_t{1} << qubo.num_vars;
  MaskExtremes e{};
  double lo = qubo.value(mask_to_bits(0, qubo.num_vars)), hi = lo;
  for (std::uint64_t m = 1; m < count; ++m) {
    const double v = qubo.value(mask_to_bits(m, qubo.num_vars));
    if (v < lo) lo = v, e.argmin = m;
    if (v > hi) hi = v, e.argmax = m;
  }
  return e;
}

}  // namespace clq::kernels::serial
