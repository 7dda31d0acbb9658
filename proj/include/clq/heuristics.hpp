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
#include <vector>

#include "clq/cost_model.hpp"
#include "clq/rng.hpp"

namespace clq {

struct SaConfig {
  long iterations = 0;          // 0 means 100 n^2
  double reheat_factor = 1.2;
  double stagnation_fraction = 0.01;
  std::uint64_t seed = 0;
  bool record_trace = false;

  void validate() const;
};

struct SaTrace {
  std::vector<double> temperatures;  // temperature used at each iteration
  std::vector<long> reheats;         // iterations at which a reheat took effect
  std::vector<double> best_costs;    // incumbent after each iteration
};

struct AcoConfig {
  double alpha = 1.0;
  double beta = 0;        // 0 means 2 + ln n
  double tau_min = 0.01;
  double tau_max = 5.0;
  int ants = 0;           // 0 means min(2n, 50)
  int iterations = 0;     // 0 means 100 + 3n
  double evaporation = 0.1;
  std::uint64_t seed = 0;
  bool record_trace = false;

  void validate() const;
  AcoConfig resolved(int n) const;
};

struct AcoTrace {
  std::vector<double> tau_low;   // pheromone minimum after each update
  std::vector<double> tau_high;  // pheromone maximum after each update
  std::vector<double> best_costs;
};

struct HeuristicResult {
  Tour tour;
  double cost = 0;  // closed route cost
  SaTrace sa_trace;
  AcoTrace aco_trace;
};

/// T_k = T0 / (1 + ln(1 + k)) scaled by the accumulated reheat factor.
double sa_temperature(double t0, long k);
/// Metropolis rule: 1 for delta <= 0, exp(-delta / T) otherwise.
double sa_acceptance(double delta, double temperature);
/// Population standard deviation of the off-diagonal entries.
double off_diagonal_stddev(const CostMatrix& cost);

HeuristicResult simulated_annealing(const CostMatrix& cost, const SaConfig& config);

/// Roulette weights tau^alpha * (1/d)^beta over `unvisited`, normalized.
std::vector<double> aco_transition_probabilities(const Grid<double>& tau, const CostMatrix& cost, int from,
                                                 const std::vector<int>& unvisited, double alpha, double beta);

HeuristicResult ant_colony(const CostMatrix& cost, const AcoConfig& config);

/// First-improvement 2-opt on a closed tour with direction-sensitive costs.
/// Scan order: i = 0..n-2, j = i+1..n-1, reversing tour[i+1..j].
Tour two_opt(const CostMatrix& cost, Tour tour);

/// True when no single segment reversal lowers the closed cost by more than tol.
bool is_two_opt_optimal(const CostMatrix& cost, const Tour& tour, double tol = 1e-9);

}  // namespace clq
