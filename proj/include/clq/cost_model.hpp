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

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace clq {

/// Dense row-major matrix.
template <class T>
class Grid {
 public:
  Grid() = default;
  Grid(std::size_t rows, std::size_t cols, T fill = T{}) : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  std::span<const T> data() const { return data_; }
  std::span<T> data() { return data_; }
  bool operator==(const Grid&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using BinaryMatrix = Grid<std::uint8_t>;

/// City visited at each step; seq[t] in [0, n).
using Sequence = std::vector<int>;
/// A permutation of {0..n-1}.
using Tour = std::vector<int>;

/// n x n nonnegative travel costs with a zero diagonal.
class CostMatrix {
 public:
  CostMatrix() = default;
  /// Throws std::invalid_argument on a non-square, negative, non-finite or
  /// nonzero-diagonal input, or n < 2.
  explicit CostMatrix(Grid<double> entries);
  static CostMatrix from_rows(const std::vector<std::vector<double>>& rows);

  int n() const { return static_cast<int>(entries_.rows()); }
  double operator()(int i, int j) const { return entries_(i, j); }
  const Grid<double>& grid() const { return entries_; }
  double max_entry() const;
  /// Submatrix restricted to `cities`, in the given order.
  CostMatrix submatrix(std::span<const int> cities) const;
  bool operator==(const CostMatrix&) const = default;

 private:
  Grid<double> entries_;
};

/// Per-term penalty weights; unset entries resolve to default_penalty_weight.
struct PenaltyWeights {
  std::optional<double> p;     // each city visited once
  std::optional<double> q;     // one city per step (full-space reference only)
  std::optional<double> k;     // binary node compatibility
  std::optional<double> road;
  std::optional<double> time;
  bool operator==(const PenaltyWeights&) const = default;
};

struct ConstraintSet {
  std::optional<std::vector<std::uint8_t>> bnc;  // category bit per city
  std::optional<BinaryMatrix> road;              // 1 = direct edge forbidden
  std::optional<BinaryMatrix> time;              // (city, step), 1 = forbidden
  PenaltyWeights lambda;

  bool empty() const { return !bnc && !road && !time; }
  /// Throws std::invalid_argument when dimensions or entries are invalid for n.
  void validate(int n) const;
  bool operator==(const ConstraintSet&) const = default;
};

struct ResolvedWeights {
  double p = 0, q = 0, k = 0, road = 0, time = 0;
};

/// lambda = max_ij(w_ij) * n.
double default_penalty_weight(const CostMatrix& cost);

/// Cost matrix with BNC and road penalties folded in.
Grid<double> build_effective_matrix(const CostMatrix& cost, const ConstraintSet& constraints);

constexpr std::uint64_t kDefaultTableCap = 100'000'000;

/// Largest representable n^n, or UINT64_MAX on overflow.
std::uint64_t subspace_size(int n);

std::uint64_t encode_sequence(std::span<const int> seq, int n);
Sequence decode_sequence(std::uint64_t idx, int n);

struct ProblemOptions {
  bool build_table = true;
  std::uint64_t table_cap = kDefaultTableCap;
};

/// A constrained TSP instance. Immutable after construction.
///
/// `step_bias`, when present, adds a real linear term b(i, t) for city i at
/// step t. Cluster solving uses it to charge the closing edge of a cycle
/// whose start city is pinned.
class TspProblem {
 public:
  TspProblem(CostMatrix cost, ConstraintSet constraints = {}, ProblemOptions options = {},
             std::optional<Grid<double>> step_bias = std::nullopt);

  int n() const { return cost_.n(); }
  const CostMatrix& cost() const { return cost_; }
  const ConstraintSet& constraints() const { return constraints_; }
  const ResolvedWeights& weights() const { return weights_; }
  const Grid<double>& effective() const { return effective_; }
  const std::optional<Grid<double>>& step_bias() const { return step_bias_; }

  bool has_table() const { return table_ != nullptr; }
  /// Throws std::logic_error when the table was not built.
  std::span<const double> subspace_costs() const;

 private:
  CostMatrix cost_;
  ConstraintSet constraints_;
  ResolvedWeights weights_;
  Grid<double> effective_;
  std::optional<Grid<double>> step_bias_;
  std::shared_ptr<const std::vector<double>> table_;
};

/// D(x) + P~(x) + T(x) for a one-city-per-step sequence (open path, no
/// closing edge).
double tour_cost(const TspProblem& problem, std::span<const int> seq);

/// Raw travel cost of a permutation; adds tour[n-1] -> tour[0] iff closed.
double route_cost(const CostMatrix& cost, std::span<const int> tour, bool closed);

bool is_permutation_of_n(std::span<const int> tour, int n);

/// True when the sequence is a permutation that incurs no logistical penalty
/// (BNC, road, time).
bool violates_nothing(const TspProblem& problem, std::span<const int> seq);

}  // namespace clq
