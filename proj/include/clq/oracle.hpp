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

#include <cstdint>
#include <optional>
#include <string>

#include "clq/cost_model.hpp"
#include "clq/kernels.hpp"

namespace clq {

struct ExactSolution {
  double cost = 0;
  Tour tour;
};

inline constexpr int kMaxHeldKarp = 20;
inline constexpr int kMaxEnumeration = 10;

/// Held-Karp optimum over permutations. Closed tours start at city 0; open
/// paths may start anywhere. Ties resolve to the lexicographically smallest
/// permutation.
ExactSolution exact_tsp(const CostMatrix& cost, bool closed);

/// Minimal open path that starts at `entry` and ends at `exit`.
ExactSolution exact_path_tsp(const CostMatrix& cost, int entry, int exit);

/// Brute-force counterparts used as cross-checks.
ExactSolution enumerate_tsp(const CostMatrix& cost, bool closed);
ExactSolution enumerate_path_tsp(const CostMatrix& cost, int entry, int exit);

enum class ExtremesMode { full, subspace };

ExtremesMode parse_extremes_mode(const std::string& s);
std::string to_string(ExtremesMode mode);

inline constexpr int kMaxFullExtremes = 5;

struct Extremes {
  double c_opt = 0;
  double c_worst = 0;
  ExtremesMode mode = ExtremesMode::subspace;
  Sequence opt_sequence;                   // set when the optimum is one-city-per-step
  std::optional<std::uint64_t> opt_bits;   // full mode only
  std::optional<std::uint64_t> worst_bits; // full mode only
};

/// Full mode scans every n^2-bit vector with both canonical penalties
/// (n <= 5); subspace mode scans the n^n sequence table.
Extremes extremes(const TspProblem& problem, ExtremesMode mode, kernels::Exec exec = kernels::Exec::parallel);

}  // namespace clq
