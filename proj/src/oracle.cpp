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

#include "clq/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "clq/qubo.hpp"

namespace clq {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Held-Karp over the `free` cities with a fixed prefix and suffix. Entering
// the first free city costs enter(c); leaving the last costs leave(c).
// g[mask][j] is the cheapest completion from free city j once `mask` is done.
template <class Enter, class Leave>
ExactSolution held_karp(const CostMatrix& cost, std::vector<int> prefix, const std::vector<int>& free,
                        std::vector<int> suffix, Enter enter, Leave leave, bool closed) {
  const int m = static_cast<int>(free.size());
  Tour tour = std::move(prefix);
  if (m == 0) {
    tour.insert(tour.end(), suffix.begin(), suffix.end());
    return {route_cost(cost, tour, closed), tour};
  }
  const std::size_t states = std::size_t{1} << m;
  const std::uint32_t full = static_cast<std::uint32_t>(states - 1);
  std::vector<double> g(states * m, kInf);
  for (std::uint32_t mask = full; mask >= 1; --mask) {
    for (int j = 0; j < m; ++j) {
      if (!(mask >> j & 1U)) continue;
      double best = kInf;
      if (mask == full) {
        best = leave(free[j]);
      } else {
        for (int k = 0; k < m; ++k) {
          if (mask >> k & 1U) continue;
          best = std::min(best, cost(free[j], free[k]) + g[(mask | (1U << k)) * m + k]);
        }
      }
      g[static_cast<std::size_t>(mask) * m + j] = best;
    }
  }

  double opt = kInf;
  for (int j = 0; j < m; ++j) opt = std::min(opt, enter(free[j]) + g[(std::size_t{1} << j) * m + j]);
  const double tol = 1e-12 * (1.0 + std::abs(opt)) * m;

  // Smallest next city that stays on an optimal completion; `free` is sorted
  // ascending so this yields the lexicographically smallest optimal order.
  std::uint32_t mask = 0;
  int last = -1;
  double remaining = opt;
  for (int step = 0; step < m; ++step) {
    for (int k = 0; k < m; ++k) {
      if (mask >> k & 1U) continue;
      const double edge = last < 0 ? enter(free[k]) : cost(free[last], free[k]);
      const double via = edge + g[(mask | (1U << k)) * m + k];
      if (via <= remaining + tol) {
        remaining -= edge;
        mask |= 1U << k;
        last = k;
        tour.push_back(free[k]);
        break;
      }
    }
  }
  tour.insert(tour.end(), suffix.begin(), suffix.end());
  return {route_cost(cost, tour, closed), tour};
}

void check_size(int n, int cap, const char* what) {
  if (n > cap) throw std::invalid_argument(std::string(what) + ": n=" + std::to_string(n) + " exceeds cap " + std::to_string(cap));
}

void check_endpoints(int n, int entry, int exit) {
  if (entry < 0 || entry >= n || exit < 0 || exit >= n) throw std::invalid_argument("path endpoints out of range");
  if (entry == exit) throw std::invalid_argument("path entry and exit must differ for n >= 2");
}

}  // namespace

ExactSolution exact_tsp(const CostMatrix& cost, bool closed) {
  const int n = cost.n();
  check_size(n, kMaxHeldKarp, "exact_tsp");
  if (closed) {
    std::vector<int> free(n - 1);
    std::iota(free.begin(), free.end(), 1);
    return held_karp(
        cost, {0}, free, {}, [&](int c) { return cost(0, c); }, [&](int c) { return cost(c, 0); }, true);
  }
  std::vector<int> free(n);
  std::iota(free.begin(), free.end(), 0);
  return held_karp(
      cost, {}, free, {}, [](int) { return 0.0; }, [](int) { return 0.0; }, false);
}

ExactSolution exact_path_tsp(const CostMatrix& cost, int entry, int exit) {
  const int n = cost.n();
  check_size(n, kMaxHeldKarp, "exact_path_tsp");
  check_endpoints(n, entry, exit);
  std::vector<int> free;
  for (int c = 0; c < n; ++c)
    if (c != entry && c != exit) free.push_back(c);
  return held_karp(
      cost, {entry}, free, {exit}, [&](int c) { return cost(entry, c); }, [&](int c) { return cost(c, exit); },
      false);
}

namespace {

ExactSolution enumerate(const CostMatrix& cost, std::vector<int> prefix, std::vector<int> free, std::vector<int> suffix,
                        bool closed) {
  ExactSolution best{kInf, {}};
  Tour tour;
  do {
    tour = prefix;
    tour.insert(tour.end(), free.begin(), free.end());
    tour.insert(tour.end(), suffix.begin(), suffix.end());
    const double c = route_cost(cost, tour, closed);
    if (c < best.cost) best = {c, tour};
  } while (std::next_permutation(free.begin(), free.end()));
  return best;
}

}  // namespace

ExactSolution enumerate_tsp(const CostMatrix& cost, bool closed) {
  const int n = cost.n();
  check_size(n, kMaxEnumeration, "enumerate_tsp");
  std::vector<int> free;
  for (int c = closed ? 1 : 0; c < n; ++c) free.push_back(c);
  return enumerate(cost, closed ? std::vector<int>{0} : std::vector<int>{}, free, {}, closed);
}

ExactSolution enumerate_path_tsp(const CostMatrix& cost, int entry, int exit) {
  const int n = cost.n();
  check_size(n, kMaxEnumeration, "enumerate_path_tsp");
  check_endpoints(n, entry, exit);
  std::vector<int> free;
  for (int c = 0; c < n; ++c)
    if (c != entry && c != exit) free.push_back(c);
  return enumerate(cost, {entry}, free, {exit}, false);
}

ExtremesMode parse_extremes_mode(const std::string& s) {
  if (s == "full") return ExtremesMode::full;
  if (s == "subspace") return ExtremesMode::subspace;
  throw std::invalid_argument("unknown extremes mode '" + s + "' (expected full|subspace)");
}

std::string to_string(ExtremesMode mode) { return mode == ExtremesMode::full ? "full" : "subspace"; }

namespace {

std::optional<Sequence> one_hot_sequence(std::uint64_t mask, int n) {
  Sequence seq(n);
  for (int t = 0; t < n; ++t) {
    int found = -1;
    for (int i = 0; i < n; ++i) {
      if (mask >> qubit_index(i, t, n) & 1U) {
        if (found >= 0) return std::nullopt;
        found = i;
      }
    }
    if (found < 0) return std::nullopt;
    seq[t] = found;
  }
  return seq;
}

}  // namespace

Extremes extremes(const TspProblem& problem, ExtremesMode mode, kernels::Exec exec) {
  const int n = problem.n();
  Extremes e;
  e.mode = mode;
  if (mode == ExtremesMode::subspace) {
    const auto table = problem.subspace_costs();
    const auto te = kernels::table_extremes(table, exec);
    e.c_opt = te.min;
    e.c_worst = te.max;
    e.opt_sequence = decode_sequence(te.argmin, n);
    return e;
  }
  check_size(n, kMaxFullExtremes, "extremes(full)");
  const QuboModel q = qubo_matrix(problem, true);
  const auto me = kernels::qubo_extremes(q, exec);
  e.c_opt = bitstring_cost(problem, mask_to_bits(me.argmin, n * n), true);
  e.c_worst = bitstring_cost(problem, mask_to_bits(me.argmax, n * n), true);
  e.opt_bits = me.argmin;
  e.worst_bits = me.argmax;
  if (auto seq = one_hot_sequence(me.argmin, n)) e.opt_sequence = *seq;
  return e;
}

}  // namespace clq
