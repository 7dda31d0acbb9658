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
#include <span>
#include <vector>

#include "clq/cost_model.hpp"

namespace clq {

/// Binary variable for city i at step t (both 0-based): q = t * n + i.
constexpr int qubit_index(int city, int step, int n) { return step * n + city; }

/// x^T Q x + offset with Q upper-triangular (diagonal holds linear terms).
struct QuboModel {
  int num_vars = 0;
  std::vector<double> upper;  // num_vars * num_vars, row-major, only i <= j used
  double offset = 0;

  double at(int i, int j) const { return upper[static_cast<std::size_t>(i) * num_vars + j]; }
  double value(std::span<const std::uint8_t> x) const;
};

/// QUBO for the penalized cost. With `full_canonical` the one-city-per-step
/// penalty (weight lambda_q) is included as well.
QuboModel qubo_matrix(const TspProblem& problem, bool full_canonical = false);

/// Direct evaluation of the penalized cost on an n^2-bit vector.
double bitstring_cost(const TspProblem& problem, std::span<const std::uint8_t> x, bool full_canonical);

/// One-hot image of a sequence: bit t*n + c_t set.
std::vector<std::uint8_t> sequence_to_bits(std::span<const int> seq, int n);
/// Bits of a little-endian mask.
std::vector<std::uint8_t> mask_to_bits(std::uint64_t mask, int num_bits);
/// Renders bits as a '0'/'1' string, character q = bit q.
std::string bits_to_string(std::span<const std::uint8_t> bits);

/// A Pauli-Z product with a real coefficient; empty `qubits` is the identity.
struct IsingTerm {
  std::vector<int> qubits;
  double coeff = 0;
};

/// Ising expansion via x = (1 - Z) / 2. Terms are sorted by (arity, qubits)
/// with the identity first; exact-zero coefficients are dropped.
std::vector<IsingTerm> ising_terms(const TspProblem& problem, bool full_canonical = false);
std::vector<IsingTerm> ising_terms(const QuboModel& qubo);

/// Evaluates the term list on spins z_q = 1 - 2 x_q.
double evaluate_ising(std::span<const IsingTerm> terms, std::span<const std::uint8_t> x);

struct TermCounts {
  std::size_t single = 0;
  std::size_t pair = 0;
  std::size_t total_non_identity() const { return single + pair; }
};
TermCounts count_terms(std::span<const IsingTerm> terms);

}  // namespace clq
