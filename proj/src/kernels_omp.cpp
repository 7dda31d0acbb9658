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

#include <omp.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

#include "clq/cost_model.hpp"
#include "clq/kernels.hpp"
#include "clq/qubo.hpp"

namespace clq::kernels::omp {

namespace {

std::size_t block_count(std::size_t size) { return (size + kReduceBlock - 1) / kReduceBlock; }

// Sums f(k) over [0, size) in fixed blocks, then sums the blocks in order.
template <class F>
double blocked_sum(std::size_t size, F f) {
  const std::size_t blocks = block_count(size);
  std::vector<double> partial(blocks, 0.0);
#pragma omp parallel for schedule(static)
  for (std::int64_t b = 0; b < static_cast<std::int64_t>(blocks); ++b) {
    const std::size_t lo = static_cast<std::size_t>(b) * kReduceBlock;
    const std::size_t hi = std::min(size, lo + kReduceBlock);
    double s = 0;
    for (std::size_t k = lo; k < hi; ++k) s += f(k);
    partial[b] = s;
  }
  double total = 0;
  for (double s : partial) total += s;
  return total;
}

}  // namespace

std::vector<double> subspace_cost_table(const TspProblem& problem) {
  const int n = problem.n();
  const std::uint64_t size = subspace_size(n);
  std::vector<double> table(size);
  const std::size_t blocks = block_count(size);
#pragma omp parallel
  {
    std::vector<int> seq(n);
#pragma omp for schedule(static)
    for (std::int64_t b = 0; b < static_cast<std::int64_t>(blocks); ++b) {
      const std::uint64_t lo = static_cast<std::uint64_t>(b) * kReduceBlock;
      const std::uint64_t hi = std::min<std::uint64_t>(size, lo + kReduceBlock);
      std::uint64_t rest = lo;
      for (int t = 0; t < n; ++t) {
        seq[t] = static_cast<int>(rest % static_cast<std::uint64_t>(n));
        rest /= static_cast<std::uint64_t>(n);
      }
      for (std::uint64_t idx = lo; idx < hi; ++idx) {
        table[idx] = tour_cost(problem, seq);
        for (int t = 0; t < n; ++t) {
          if (++seq[t] < n) break;
          seq[t] = 0;
        }
      }
    }
  }
  return table;
}

void apply_phase(std::span<Amplitude> amps, std::span<const double> costs, double gamma) {
  const auto size = static_cast<std::int64_t>(amps.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t k = 0; k < size; ++k) amps[k] *= std::polar(1.0, -gamma * costs[k]);
}

void apply_grover_mixer(std::span<Amplitude> amps, int n, double beta) {
  const Amplitude factor = 1.0 - std::polar(1.0, -beta);
  const std::size_t size = amps.size();
  const std::size_t un = static_cast<std::size_t>(n);
  const auto slices = static_cast<std::int64_t>(size / un);
  for (std::size_t stride = 1; stride < size; stride *= un) {
#pragma omp parallel for schedule(static)
    for (std::int64_t s = 0; s < slices; ++s) {
      const std::size_t inner = static_cast<std::size_t>(s) % stride;
      const std::size_t outer = static_cast<std::size_t>(s) / stride;
      const std::size_t base = outer * stride * un + inner;
      Amplitude mean = 0;
      for (std::size_t c = 0; c < un; ++c) mean += amps[base + c * stride];
      mean /= static_cast<double>(n);
      const Amplitude shift = factor * mean;
      for (std::size_t c = 0; c < un; ++c) amps[base + c * stride] -= shift;
    }
  }
}

double expectation(std::span<const Amplitude> amps, std::span<const double> costs) {
  return blocked_sum(amps.size(), [&](std::size_t k) { return std::norm(amps[k]) * costs[k]; });
}

double norm_squared(std::span<const Amplitude> amps) {
  return blocked_sum(amps.size(), [&](std::size_t k) { return std::norm(amps[k]); });
}

TableExtremes table_extremes(std::span<const double> values) {
  if (values.empty()) throw std::invalid_argument("table_extremes: empty input");
  const std::size_t blocks = block_count(values.size());
  std::vector<TableExtremes> partial(blocks);
#pragma omp parallel for schedule(static)
  for (std::int64_t b = 0; b < static_cast<std::int64_t>(blocks); ++b) {
    const std::size_t lo = static_cast<std::size_t>(b) * kReduceBlock;
    const std::size_t hi = std::min(values.size(), lo + kReduceBlock);
    TableExtremes e{values[lo], values[lo], lo, lo};
    for (std::size_t k = lo + 1; k < hi; ++k) {
      if (values[k] < e.min) e.min = values[k], e.argmin = k;
      if (values[k] > e.max) e.max = values[k], e.argmax = k;
    }
    partial[b] = e;
  }
  TableExtremes e = partial[0];
  for (std::size_t b = 1; b < blocks; ++b) {
    if (partial[b].min < e.min) e.min = partial[b].min, e.argmin = partial[b].argmin;
    if (partial[b].max > e.max) e.max = partial[b].max, e.argmax = partial[b].argmax;
  }
  return e;
}

MaskExtremes qubo_extremes(const QuboModel& qubo) {
  const int m = qubo.num_vars;
  if (m > 40) throw std::invalid_argument("qubo_extremes: too many variables");
  const int high_bits = std::min(m, 6);
  const int low_bits = m - high_bits;
  const std::int64_t shards = std::int64_t{1} << high_bits;
  constexpr std::uint64_t kResync = std::uint64_t{1} << 16;

  // Symmetric coupling and diagonal.
  std::vector<double> coupling(static_cast<std::size_t>(m) * m, 0.0), diag(m);
  for (int a = 0; a < m; ++a) {
    diag[a] = qubo.at(a, a);
    for (int b = a + 1; b < m; ++b) coupling[a * m + b] = coupling[b * m + a] = qubo.at(a, b);
  }

  struct Shard {
    double lo, hi;
    std::uint64_t argmin, argmax;
  };
  std::vector<Shard> result(shards);

#pragma omp parallel
  {
    std::vector<std::uint8_t> x(m);
    std::vector<double> field(m);
    auto resync = [&](std::uint64_t mask, double& energy) {
      for (int q = 0; q < m; ++q) x[q] = static_cast<std::uint8_t>((mask >> q) & 1U);
      energy = qubo.value(x);
      for (int q = 0; q < m; ++q) {
        double f = 0;
        for (int r = 0; r < m; ++r)
          if (x[r]) f += coupling[q * m + r];
        field[q] = f;
      }
    };
#pragma omp for schedule(dynamic)
    for (std::int64_t s = 0; s < shards; ++s) {
      const std::uint64_t prefix = static_cast<std::uint64_t>(s) << low_bits;
      std::uint64_t mask = prefix;
      double energy = 0;
      resync(mask, energy);
      Shard best{energy, energy, mask, mask};
      const std::uint64_t steps = std::uint64_t{1} << low_bits;
      for (std::uint64_t i = 1; i < steps; ++i) {
        const int q = std::countr_zero(i);
        const double sign = x[q] ? -1.0 : 1.0;
        energy += sign * (diag[q] + field[q]);
        x[q] ^= 1U;
        mask ^= std::uint64_t{1} << q;
        const double* col = &coupling[static_cast<std::size_t>(q) * m];
        for (int r = 0; r < m; ++r) field[r] += sign * col[r];
        if ((i & (kResync - 1)) == 0) resync(mask, energy);
        if (energy < best.lo) best.lo = energy, best.argmin = mask;
        if (energy > best.hi) best.hi = energy, best.argmax = mask;
      }
      result[s] = best;
    }
  }
  Shard e = result[0];
  for (std::int64_t s = 1; s < shards; ++s) {
    if (result[s].lo < e.lo) e.lo = result[s].lo, e.argmin = result[s].argmin;
    if (result[s].hi > e.hi) e.hi = result[s].hi, e.argmax = result[s].argmax;
  }
  return {e.argmin, e.argmax};
}

}  // namespace clq::kernels::omp
