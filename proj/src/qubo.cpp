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

#include "clq/qubo.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>

namespace clq {

double QuboModel::value(std::span<const std::uint8_t> x) const {
  if (static_cast<int>(x.size()) != num_vars) throw std::invalid_argument("qubo: wrong bit count");
  double v = offset;
  for (int i = 0; i < num_vars; ++i) {
    if (!x[i]) continue;
    const double* row = &upper[static_cast<std::size_t>(i) * num_vars];
    for (int j = i; j < num_vars; ++j)
      if (x[j]) v += row[j];
  }
  return v;
}

namespace {

void add_pair(QuboModel& q, int a, int b, double w) {
  if (a > b) std::swap(a, b);
  q.upper[static_cast<std::size_t>(a) * q.num_vars + b] += w;
}

}  // namespace

QuboModel qubo_matrix(const TspProblem& problem, bool full_canonical) {
  const int n = problem.n();
  const auto& eff = problem.effective();
  const auto& w = problem.weights();
  QuboModel q;
  q.num_vars = n * n;
  q.upper.assign(static_cast<std::size_t>(q.num_vars) * q.num_vars, 0.0);

  for (int t = 0; t + 1 < n; ++t)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (eff(i, j) != 0.0) add_pair(q, qubit_index(i, t, n), qubit_index(j, t + 1, n), eff(i, j));

  // lambda (sum_t x_t - 1)^2 = lambda (1 - sum_t x_t + 2 sum_{t<u} x_t x_u)
  auto one_hot_penalty = [&](double lambda, auto var) {
    for (int a = 0; a < n; ++a) {
      q.offset += lambda;
      for (int b = 0; b < n; ++b) {
        add_pair(q, var(a, b), var(a, b), -lambda);
        for (int c = b + 1; c < n; ++c) add_pair(q, var(a, b), var(a, c), 2 * lambda);
      }
    }
  };
  one_hot_penalty(w.p, [n](int city, int step) { return qubit_index(city, step, n); });
  if (full_canonical) one_hot_penalty(w.q, [n](int step, int city) { return qubit_index(city, step, n); });

  if (const auto& tm = problem.constraints().time)
    for (int i = 0; i < n; ++i)
      for (int t = 0; t < n; ++t)
        if ((*tm)(i, t)) add_pair(q, qubit_index(i, t, n), qubit_index(i, t, n), w.time);
  if (const auto& bias = problem.step_bias())
    for (int i = 0; i < n; ++i)
      for (int t = 0; t < n; ++t) add_pair(q, qubit_index(i, t, n), qubit_index(i, t, n), (*bias)(i, t));
  return q;
}

double bitstring_cost(const TspProblem& problem, std::span<const std::uint8_t> x, bool full_canonical) {
  const int n = problem.n();
  if (static_cast<int>(x.size()) != n * n)
    throw std::invalid_argument("bitstring_cost: expected " + std::to_string(n * n) + " bits, got " +
                                std::to_string(x.size()));
  const auto& eff = problem.effective();
  const auto& w = problem.weights();
  auto bit = [&](int i, int t) { return static_cast<double>(x[qubit_index(i, t, n)]); };

  double d = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int t = 0; t + 1 < n; ++t) d += eff(i, j) * bit(i, t) * bit(j, t + 1);

  double per_city = 0;
  for (int i = 0; i < n; ++i) {
    double s = -1;
    for (int t = 0; t < n; ++t) s += bit(i, t);
    per_city += s * s;
  }
  double total = d + w.p * per_city;

  if (full_canonical) {
    double per_step = 0;
    for (int t = 0; t < n; ++t) {
      double s = -1;
      for (int i = 0; i < n; ++i) s += bit(i, t);
      per_step += s * s;
    }
    total += w.q * per_step;
  }
  if (const auto& tm = problem.constraints().time) {
    double tv = 0;
    for (int i = 0; i < n; ++i)
      for (int t = 0; t < n; ++t) tv += (*tm)(i, t) * bit(i, t);
    total += w.time * tv;
  }
  if (const auto& bias = problem.step_bias())
    for (int i = 0; i < n; ++i)
      for (int t = 0; t < n; ++t) total += (*bias)(i, t) * bit(i, t);
  return total;
}

std::vector<std::uint8_t> sequence_to_bits(std::span<const int> seq, int n) {
  std::vector<std::uint8_t> bits(static_cast<std::size_t>(n) * n, 0);
  for (int t = 0; t < static_cast<int>(seq.size()); ++t) bits[qubit_index(seq[t], t, n)] = 1;
  return bits;
}

std::vector<std::uint8_t> mask_to_bits(std::uint64_t mask, int num_bits) {
  std::vector<std::uint8_t> bits(num_bits);
  for (int q = 0; q < num_bits; ++q) bits[q] = static_cast<std::uint8_t>((mask >> q) & 1U);
  return bits;
}

std::string bits_to_string(std::span<const std::uint8_t> bits) {
  std::string s(bits.size(), '0');
  for (std::size_t q = 0; q < bits.size(); ++q)
    if (bits[q]) s[q] = '1';
  return s;
}

std::vector<IsingTerm> ising_terms(const QuboModel& qubo) {
  const int m = qubo.num_vars;
  double identity = qubo.offset;
  std::vector<double> single(m, 0.0);
  std::map<std::pair<int, int>, double> pair;
  for (int a = 0; a < m; ++a) {
    const double lin = qubo.at(a, a);
    if (lin != 0.0) {
      identity += lin / 2;
      single[a] -= lin / 2;
    }
    for (int b = a + 1; b < m; ++b) {
      const double w = qubo.at(a, b);
      if (w == 0.0) continue;
      identity += w / 4;
      single[a] -= w / 4;
      single[b] -= w / 4;
      pair[{a, b}] += w / 4;
    }
  }
  std::vector<IsingTerm> terms;
  terms.push_back({{}, identity});
  for (int a = 0; a < m; ++a)
    if (single[a] != 0.0) terms.push_back({{a}, single[a]});
  for (const auto& [ab, c] : pair)
    if (c != 0.0) terms.push_back({{ab.first, ab.second}, c});
  return terms;
}

std::vector<IsingTerm> ising_terms(const TspProblem& problem, bool full_canonical) {
  return ising_terms(qubo_matrix(problem, full_canonical));
}

double evaluate_ising(std::span<const IsingTerm> terms, std::span<const std::uint8_t> x) {
  double v = 0;
  for (const auto& term : terms) {
    double z = 1;
    for (int q : term.qubits) z *= x[q] ? -1.0 : 1.0;
    v += term.coeff * z;
  }
  return v;
}

TermCounts count_terms(std::span<const IsingTerm> terms) {
  TermCounts c;
  for (const auto& t : terms) {
    if (t.qubits.size() == 1) ++c.single;
    if (t.qubits.size() == 2) ++c.pair;
  }
  return c;
}

}  // namespace clq
