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

#include "clq/cost_model.hpp"

#include <algorithm>
#include <cmath>

#include "clq/kernels.hpp"

namespace clq {

CostMatrix::CostMatrix(Grid<double> entries) : entries_(std::move(entries)) {
  const auto n = entries_.rows();
  if (entries_.cols() != n) throw std::invalid_argument("cost matrix must be square");
  if (n < 2) throw std::invalid_argument("cost matrix needs n >= 2");
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double v = entries_(i, j);
      if (!std::isfinite(v) || v < 0)
        throw std::invalid_argument("cost entry (" + std::to_string(i) + "," + std::to_string(j) +
                                    ") must be finite and nonnegative");
    }
    if (entries_(i, i) != 0.0)
      throw std::invalid_argument("cost diagonal entry " + std::to_string(i) + " must be 0");
  }
}

CostMatrix CostMatrix::from_rows(const std::vector<std::vector<double>>& rows) {
  Grid<double> g(rows.size(), rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows.size())
      throw std::invalid_argument("cost row " + std::to_string(i) + " has " + std::to_string(rows[i].size()) +
                                  " entries, expected " + std::to_string(rows.size()));
    for (std::size_t j = 0; j < rows.size(); ++j) g(i, j) = rows[i][j];
  }
  return CostMatrix(std::move(g));
}

double CostMatrix::max_entry() const {
  auto d = entries_.data();
  return *std::max_element(d.begin(), d.end());
}

CostMatrix CostMatrix::submatrix(std::span<const int> cities) const {
  Grid<double> g(cities.size(), cities.size());
  for (std::size_t a = 0; a < cities.size(); ++a)
    for (std::size_t b = 0; b < cities.size(); ++b) g(a, b) = entries_(cities[a], cities[b]);
  return CostMatrix(std::move(g));
}

namespace {

void check_binary(std::span<const std::uint8_t> bits, const char* what) {
  for (auto b : bits)
    if (b > 1) throw std::invalid_argument(std::string(what) + " entries must be 0 or 1");
}

void check_weight(const std::optional<double>& w, const char* what) {
  if (w && (!std::isfinite(*w) || *w < 0)) throw std::invalid_argument(std::string("penalty weight ") + what + " must be >= 0");
}

}  // namespace

void ConstraintSet::validate(int n) const {
  const auto un = static_cast<std::size_t>(n);
  if (bnc) {
    if (bnc->size() != un) throw std::invalid_argument("bnc vector length must equal n");
    check_binary(*bnc, "bnc");
  }
  if (road) {
    if (road->rows() != un || road->cols() != un) throw std::invalid_argument("road matrix must be n x n");
    check_binary(road->data(), "road");
    for (int i = 0; i < n; ++i)
      if ((*road)(i, i) != 0) throw std::invalid_argument("road matrix diagonal must be 0");
  }
  if (time) {
    if (time->rows() != un || time->cols() != un) throw std::invalid_argument("time matrix must be n x n");
    check_binary(time->data(), "time");
  }
  check_weight(lambda.p, "p");
  check_weight(lambda.q, "q");
  check_weight(lambda.k, "k");
  check_weight(lambda.road, "r");
  check_weight(lambda.time, "t");
}

double default_penalty_weight(const CostMatrix& cost) { return cost.max_entry() * cost.n(); }

Grid<double> build_effective_matrix(const CostMatrix& cost, const ConstraintSet& constraints) {
  const int n = cost.n();
  constraints.validate(n);
  const double fallback = default_penalty_weight(cost);
  const double lk = constraints.lambda.k.value_or(fallback);
  const double lr = constraints.lambda.road.value_or(fallback);
  Grid<double> eff = cost.grid();
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      if (constraints.bnc) {
        const int x = (*constraints.bnc)[i] ^ (*constraints.bnc)[j];
        eff(i, j) += lk * (1 - x);
      }
      if (constraints.road) eff(i, j) += lr * (*constraints.road)(i, j);
    }
  }
  return eff;
}

std::uint64_t subspace_size(int n) {
  std::uint64_t s = 1;
  for (int t = 0; t < n; ++t) {
    if (s > UINT64_MAX / static_cast<std::uint64_t>(n)) return UINT64_MAX;
    s *= static_cast<std::uint64_t>(n);
  }
  return s;
}

std::uint64_t encode_sequence(std::span<const int> seq, int n) {
  std::uint64_t idx = 0;
  for (std::size_t t = seq.size(); t-- > 0;) {
    if (seq[t] < 0 || seq[t] >= n) throw std::invalid_argument("sequence entry out of range");
    idx = idx * static_cast<std::uint64_t>(n) + static_cast<std::uint64_t>(seq[t]);
  }
  return idx;
}

Sequence decode_sequence(std::uint64_t idx, int n) {
  Sequence seq(n);
  for (int t = 0; t < n; ++t) {
    seq[t] = static_cast<int>(idx % static_cast<std::uint64_t>(n));
    idx /= static_cast<std::uint64_t>(n);
  }
  return seq;
}

TspProblem::TspProblem(CostMatrix cost, ConstraintSet constraints, ProblemOptions options,
                       std::optional<Grid<double>> step_bias)
    : cost_(std::move(cost)), constraints_(std::move(constraints)), step_bias_(std::move(step_bias)) {
  const int n = cost_.n();
  constraints_.validate(n);
  if (step_bias_ && (step_bias_->rows() != static_cast<std::size_t>(n) || step_bias_->cols() != static_cast<std::size_t>(n)))
    throw std::invalid_argument("step bias must be n x n");
  const double fallback = default_penalty_weight(cost_);
  weights_.p = constraints_.lambda.p.value_or(fallback);
  weights_.q = constraints_.lambda.q.value_or(fallback);
  weights_.k = constraints_.lambda.k.value_or(fallback);
  weights_.road = constraints_.lambda.road.value_or(fallback);
  weights_.time = constraints_.lambda.time.value_or(fallback);
  if (!(weights_.p > 0))
    throw std::invalid_argument("canonical penalty weight lambda_p must be > 0 (override it for an all-zero matrix)");
  effective_ = build_effective_matrix(cost_, constraints_);
  if (options.build_table && subspace_size(n) <= options.table_cap)
    table_ = std::make_shared<const std::vector<double>>(kernels::subspace_cost_table(*this, kernels::Exec::parallel));
}

std::span<const double> TspProblem::subspace_costs() const {
  if (!table_) throw std::logic_error("subspace cost table not available (n^n above cap or disabled)");
  return *table_;
}

double tour_cost(const TspProblem& problem, std::span<const int> seq) {
  const int n = problem.n();
  const auto& eff = problem.effective();
  const auto& w = problem.weights();
  double d = 0;
  for (int t = 0; t + 1 < n; ++t) d += eff(seq[t], seq[t + 1]);
  int visits[64] = {};
  std::vector<int> heap_visits;
  int* v = visits;
  if (n > 64) {
    heap_visits.assign(n, 0);
    v = heap_visits.data();
  }
  for (int t = 0; t < n; ++t) ++v[seq[t]];
  double pen = 0;
  for (int i = 0; i < n; ++i) pen += static_cast<double>((v[i] - 1) * (v[i] - 1));
  double total = d + w.p * pen;
  if (const auto& tm = problem.constraints().time) {
    int violations = 0;
    for (int t = 0; t < n; ++t) violations += (*tm)(seq[t], t);
    total += w.time * violations;
  }
  if (const auto& bias = problem.step_bias())
    for (int t = 0; t < n; ++t) total += (*bias)(seq[t], t);
  return total;
}

bool is_permutation_of_n(std::span<const int> tour, int n) {
  if (static_cast<int>(tour.size()) != n) return false;
  std::vector<char> seen(n, 0);
  for (int c : tour) {
    if (c < 0 || c >= n || seen[c]) return false;
    seen[c] = 1;
  }
  return true;
}

double route_cost(const CostMatrix& cost, std::span<const int> tour, bool closed) {
  if (!is_permutation_of_n(tour, cost.n())) throw std::invalid_argument("route_cost: tour is not a permutation");
  double c = 0;
  for (std::size_t k = 0; k + 1 < tour.size(); ++k) c += cost(tour[k], tour[k + 1]);
  if (closed) c += cost(tour.back(), tour.front());
  return c;
}

bool violates_nothing(const TspProblem& problem, std::span<const int> seq) {
  const int n = problem.n();
  if (!is_permutation_of_n(seq, n)) return false;
  const auto& c = problem.constraints();
  for (int t = 0; t + 1 < n; ++t) {
    const int i = seq[t], j = seq[t + 1];
    if (c.bnc && (*c.bnc)[i] == (*c.bnc)[j]) return false;
    if (c.road && (*c.road)(i, j)) return false;
  }
  if (c.time)
    for (int t = 0; t < n; ++t)
      if ((*c.time)(seq[t], t)) return false;
  return true;
}

}  // namespace clq
