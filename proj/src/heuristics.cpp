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

#include "clq/heuristics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace clq {

namespace {

constexpr double kImproveTol = 1e-12;

Tour random_tour(int n, Rng& rng) {
  Tour t(n);
  std::iota(t.begin(), t.end(), 0);
  for (int i = n - 1; i > 0; --i) std::swap(t[i], t[uniform_index(rng, static_cast<std::uint64_t>(i) + 1)]);
  return t;
}

double closed_cost(const CostMatrix& cost, const Tour& t) {
  double c = 0;
  for (std::size_t k = 0; k + 1 < t.size(); ++k) c += cost(t[k], t[k + 1]);
  return c + cost(t.back(), t.front());
}

// Cost change of reversing t[i+1..j] in a closed tour.
double reversal_delta(const CostMatrix& cost, const Tour& t, int i, int j) {
  const int n = static_cast<int>(t.size());
  const int a = t[i], b = t[(j + 1) % n];
  double before = cost(a, t[i + 1]) + cost(t[j], b);
  double after = cost(a, t[j]) + cost(t[i + 1], b);
  for (int k = i + 1; k < j; ++k) {
    before += cost(t[k], t[k + 1]);
    after += cost(t[k + 1], t[k]);
  }
  return after - before;
}

}  // namespace

void SaConfig::validate() const {
  if (iterations < 0) throw std::invalid_argument("SaConfig: iterations must be >= 1");
  if (!(reheat_factor > 1)) throw std::invalid_argument("SaConfig: reheat_factor must be > 1");
  if (!(stagnation_fraction > 0 && stagnation_fraction < 1))
    throw std::invalid_argument("SaConfig: stagnation_fraction must be in (0, 1)");
}

void AcoConfig::validate() const {
  if (!(tau_min < tau_max) || tau_min <= 0) throw std::invalid_argument("AcoConfig: need 0 < tau_min < tau_max");
  if (ants < 0 || iterations < 0) throw std::invalid_argument("AcoConfig: ants and iterations must be >= 1");
  if (!(evaporation > 0 && evaporation < 1)) throw std::invalid_argument("AcoConfig: evaporation must be in (0, 1)");
}

AcoConfig AcoConfig::resolved(int n) const {
  AcoConfig c = *this;
  if (c.beta == 0) c.beta = 2.0 + std::log(static_cast<double>(n));
  if (c.ants == 0) c.ants = std::min(2 * n, 50);
  if (c.iterations == 0) c.iterations = 100 + 3 * n;
  return c;
}

double sa_temperature(double t0, long k) { return t0 / (1.0 + std::log1p(static_cast<double>(k))); }

double sa_acceptance(double delta, double temperature) {
  return delta <= 0 ? 1.0 : std::exp(-delta / temperature);
}

double off_diagonal_stddev(const CostMatrix& cost) {
  const int n = cost.n();
  double sum = 0, sq = 0;
  const double count = static_cast<double>(n) * (n - 1);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) sum += cost(i, j);
  const double mean = sum / count;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) sq += (cost(i, j) - mean) * (cost(i, j) - mean);
  return std::sqrt(sq / count);
}

HeuristicResult simulated_annealing(const CostMatrix& cost, const SaConfig& config) {
  config.validate();
  const int n = cost.n();
  if (n < 3) throw std::invalid_argument("simulated_annealing: n must be >= 3");
  const long iterations = config.iterations > 0 ? config.iterations : 100L * n * n;
  const long patience = std::max(1L, static_cast<long>(std::ceil(config.stagnation_fraction * iterations)));

  Rng rng(config.seed);
  double t0 = off_diagonal_stddev(cost);
  if (!(t0 > 0)) t0 = 1.0;

  HeuristicResult res;
  Tour current = random_tour(n, rng);
  double current_cost = closed_cost(cost, current);
  Tour best = current;
  double best_cost = current_cost;
  double heat = 1.0;
  long stale = 0;
  Tour cand(n);

  for (long k = 0; k < iterations; ++k) {
    const double temperature = heat * sa_temperature(t0, k);
    int i = static_cast<int>(uniform_index(rng, n));
    int j = static_cast<int>(uniform_index(rng, n - 1));
    if (j >= i) ++j;
    cand = current;
    switch (uniform_index(rng, 3)) {
      case 0:
        std::swap(cand[i], cand[j]);
        break;
      case 1: {
        const int city = cand[i];
        cand.erase(cand.begin() + i);
        cand.insert(cand.begin() + j, city);
        break;
      }
      default:
        if (i > j) std::swap(i, j);
        std::reverse(cand.begin() + i, cand.begin() + j + 1);
    }
    const double cand_cost = closed_cost(cost, cand);
    const double delta = cand_cost - current_cost;
    if (delta <= 0 || uniform01(rng) < sa_acceptance(delta, temperature)) {
      current.swap(cand);
      current_cost = cand_cost;
    }
    if (current_cost < best_cost - kImproveTol) {
      best = current;
      best_cost = current_cost;
      stale = 0;
    } else if (++stale >= patience) {
      heat *= config.reheat_factor;
      stale = 0;
      if (config.record_trace) res.sa_trace.reheats.push_back(k + 1);
    }
    if (config.record_trace) {
      res.sa_trace.temperatures.push_back(temperature);
      res.sa_trace.best_costs.push_back(best_cost);
    }
  }
  res.tour = two_opt(cost, best);
  res.cost = closed_cost(cost, res.tour);
  return res;
}

std::vector<double> aco_transition_probabilities(const Grid<double>& tau, const CostMatrix& cost, int from,
                                                 const std::vector<int>& unvisited, double alpha, double beta) {
  std::vector<double> w(unvisited.size());
  double total = 0;
  for (std::size_t k = 0; k < unvisited.size(); ++k) {
    const int to = unvisited[k];
    w[k] = std::pow(tau(from, to), alpha) * std::pow(1.0 / cost(from, to), beta);
    total += w[k];
  }
  for (double& x : w) x /= total;
  return w;
}

HeuristicResult ant_colony(const CostMatrix& cost, const AcoConfig& raw) {
  raw.validate();
  const int n = cost.n();
  if (n < 3) throw std::invalid_argument("ant_colony: n must be >= 3");
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j && !(cost(i, j) > 0))
        throw std::invalid_argument("ant_colony: zero off-diagonal cost at (" + std::to_string(i) + "," +
                                    std::to_string(j) + ") makes the heuristic 1/d undefined");
  const AcoConfig cfg = raw.resolved(n);

  double deposit = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) deposit += cost(i, j);
  deposit /= static_cast<double>(n) * (n - 1);

  Grid<double> tau(n, n, cfg.tau_max);
  Grid<double> weight(n, n);
  HeuristicResult res;
  Tour best;
  double best_cost = std::numeric_limits<double>::infinity();
  std::vector<Tour> tours(cfg.ants, Tour(n));
  std::vector<double> lengths(cfg.ants);

  for (int it = 0; it < cfg.iterations; ++it) {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        weight(i, j) = i == j ? 0.0 : std::pow(tau(i, j), cfg.alpha) * std::pow(1.0 / cost(i, j), cfg.beta);

#pragma omp parallel for schedule(static)
    for (int a = 0; a < cfg.ants; ++a) {
      Rng rng(stable_hash(cfg.seed, {static_cast<std::uint64_t>(it), static_cast<std::uint64_t>(a)}));
      Tour& t = tours[a];
      std::vector<int> unvisited(n);
      std::iota(unvisited.begin(), unvisited.end(), 0);
      const auto start = uniform_index(rng, n);
      t[0] = unvisited[start];
      unvisited.erase(unvisited.begin() + static_cast<std::ptrdiff_t>(start));
      for (int step = 1; step < n; ++step) {
        const int from = t[step - 1];
        double total = 0;
        for (int c : unvisited) total += weight(from, c);
        double u = uniform01(rng) * total;
        std::size_t pick = unvisited.size() - 1;
        for (std::size_t k = 0; k < unvisited.size(); ++k) {
          u -= weight(from, unvisited[k]);
          if (u < 0) {
            pick = k;
            break;
          }
        }
        t[step] = unvisited[pick];
        unvisited.erase(unvisited.begin() + static_cast<std::ptrdiff_t>(pick));
      }
      lengths[a] = closed_cost(cost, t);
    }
    for (int a = 0; a < cfg.ants; ++a) {
      if (lengths[a] < best_cost - kImproveTol) {
        best_cost = lengths[a];
        best = tours[a];
      }
    }

    for (auto& v : tau.data()) v *= 1.0 - cfg.evaporation;
    const double amount = deposit / best_cost;
    for (int k = 0; k < n; ++k) tau(best[k], best[(k + 1) % n]) += amount;
    double lo = cfg.tau_max, hi = cfg.tau_min;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        if (i == j) continue;
        tau(i, j) = std::clamp(tau(i, j), cfg.tau_min, cfg.tau_max);
        lo = std::min(lo, tau(i, j));
        hi = std::max(hi, tau(i, j));
      }
    }
    if (cfg.record_trace) {
      res.aco_trace.tau_low.push_back(lo);
      res.aco_trace.tau_high.push_back(hi);
      res.aco_trace.best_costs.push_back(best_cost);
    }
  }
  res.tour = two_opt(cost, best);
  res.cost = closed_cost(cost, res.tour);
  return res;
}

Tour two_opt(const CostMatrix& cost, Tour tour) {
  const int n = cost.n();
  if (!is_permutation_of_n(tour, n)) throw std::invalid_argument("two_opt: input is not a permutation");
  bool improved = true;
  while (improved) {
    improved = false;
    for (int i = 0; i + 1 < n && !improved; ++i) {
      for (int j = i + 1; j < n; ++j) {
        if (reversal_delta(cost, tour, i, j) < -kImproveTol) {
          std::reverse(tour.begin() + i + 1, tour.begin() + j + 1);
          improved = true;
          break;
        }
      }
    }
  }
  return tour;
}

bool is_two_opt_optimal(const CostMatrix& cost, const Tour& tour, double tol) {
  const int n = cost.n();
  for (int i = 0; i + 1 < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (reversal_delta(cost, tour, i, j) < -tol) return false;
  return true;
}

}  // namespace clq
